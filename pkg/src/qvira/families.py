"""The four closed-form graded module families and their action machinery.

Each family attaches, to a nonzero parameter a, an action of the algebra
on a tower of one-dimensional degree spaces spanned by vectors v_k:

    (t1^m t2^n).v_k = f(m, n, k) v_{k+m}

with coefficient, per family tag:

    I    (a q^k)^n
    II   (-1)^m (a q^k)^n
    III  (-1)^{m+n+1} (a q^{-k-m})^n
    IV   (-1)^{n+1} (a q^{-k-m})^n

Also provided: the generic two-parameter closed form (geometric ratio b
in {q, 1/q}, unit sign lam in {1, -1}) that the classifier compares
candidate tables against, trivial-sum modules, windowed table generation,
and the graded-irreducibility check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .field import (
    FieldContext,
    RF_ONE,
    RF_Q,
    RF_ZERO,
    RationalFunction,
    rf_int,
    q_pow,
    sign_pow,
)
from .algebra import AlgebraElement, bracket
from .table import TableDocument


class Family(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class IndexZero(Exception):
    """The excluded basis index (0, 0) was used as an action index."""


class BadParameter(Exception):
    pass


@dataclass(frozen=True)
class FamilyModule:
    family: Family
    a: RationalFunction

    def __post_init__(self):
        if self.a.is_zero:
            raise BadParameter("module parameter a must be nonzero")


class GradedVector:
    """Finite linear combination of degree vectors v_k; immutable.

    Invariant: no stored coefficient is zero.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Optional[dict[int, RationalFunction]] = None):
        self.coords = {k: c for k, c in (coords or {}).items() if not c.is_zero}

    @staticmethod
    def basis(k: int, coeff: RationalFunction = RF_ONE) -> "GradedVector":
        return GradedVector({k: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "GradedVector") -> "GradedVector":
        coords = dict(self.coords)
        for k, c in other.coords.items():
            s = coords.get(k)
            s = c if s is None else s + c
            if s.is_zero:
                coords.pop(k, None)
            else:
                coords[k] = s
        out = GradedVector.__new__(GradedVector)
        out.coords = coords
        return out

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + other.scale(rf_int(-1))

    def scale(self, scalar: RationalFunction) -> "GradedVector":
        if scalar.is_zero:
            return GradedVector()
        out = GradedVector.__new__(GradedVector)
        out.coords = {k: c * scalar for k, c in self.coords.items()}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedVector) and self.coords == other.coords

    def __repr__(self) -> str:
        return f"GradedVector({self.coords!r})"


@dataclass(frozen=True)
class TrivialSumModule:
    """Direct sum of trivial one-dimensional modules on the given degrees."""

    support: frozenset[int]


def action_coeff(
    family: Family, a: RationalFunction, m: int, n: int, k: int
) -> RationalFunction:
    """The coefficient f(m, n, k) of the family action."""
    if (m, n) == (0, 0):
        raise IndexZero("action index (0, 0) is excluded")
    if a.is_zero:
        raise BadParameter("module parameter a must be nonzero")
    if family is Family.I:
        return (a * q_pow(k)) ** n
    if family is Family.II:
        return sign_pow(m) * (a * q_pow(k)) ** n
    if family is Family.III:
        return sign_pow(m + n + 1) * (a * q_pow(-k - m)) ** n
    return sign_pow(n + 1) * (a * q_pow(-k - m)) ** n


def act(module: FamilyModule, x: AlgebraElement, v: GradedVector) -> GradedVector:
    """Bilinear extension of the family action; degree m shifts k to k+m."""
    out = GradedVector()
    for (m, n), cx in x.terms.items():
        for k, cv in v.coords.items():
            coeff = action_coeff(module.family, module.a, m, n, k) * cx * cv
            out = out + GradedVector({k + m: coeff})
    return out


@dataclass(frozen=True)
class AxiomWitness:
    x: AlgebraElement
    y: AlgebraElement
    v: GradedVector
    lhs: GradedVector
    rhs: GradedVector


def verify_axiom(
    module: FamilyModule, x: AlgebraElement, y: AlgebraElement, v: GradedVector
) -> Optional[AxiomWitness]:
    """Check [x, y].v = x.(y.v) - y.(x.v) exactly; None means pass."""
    lhs = act(module, bracket(x, y), v)
    rhs = act(module, x, act(module, y, v)) - act(module, y, act(module, x, v))
    if lhs == rhs:
        return None
    return AxiomWitness(x, y, v, lhs, rhs)


def gen_table(
    family: Family,
    a: RationalFunction,
    h_bound: int,
    j_bound: int,
    k_bound: int,
    mode: FieldContext = FieldContext.symbolic(),
) -> TableDocument:
    """Windowed table of the family action, all degree dimensions 1."""
    if min(h_bound, j_bound, k_bound) < 1:
        raise ValueError("window bounds must be at least 1")
    if mode.reduce(a).is_zero:
        raise BadParameter("module parameter a must be nonzero")
    doc = TableDocument(
        context=mode,
        k_range=(-k_bound, k_bound),
        dims=tuple([1] * (2 * k_bound + 1)),
        h_range=(-h_bound, h_bound),
        j_range=(-j_bound, j_bound),
    )
    for h in range(-h_bound, h_bound + 1):
        for j in range(-j_bound, j_bound + 1):
            if (h, j) == (0, 0):
                continue
            for k in range(-k_bound, k_bound + 1):
                if not -k_bound <= k + h <= k_bound:
                    continue
                value = mode.reduce(action_coeff(family, a, h, j, k))
                if not value.is_zero:
                    doc.entries[(h, j, k)] = value
    return doc


def closed_form_f(
    b: RationalFunction,
    lam: RationalFunction,
    m: int,
    j: int,
    k: int,
    a: RationalFunction,
) -> RationalFunction:
    """Generic closed-form coefficient with ratio b and unit sign lam.

    For m != 0:

        f(m, j, k) = (a b^k (1 - b^m) / (1 - q^m))^j * f(m, 0, 0)

    where f(m, 0, 0) is (lam (1-b)/(1-q))^m (1-q^m)/(1-b^m) for m >= 1
    and carries the extra factor q/b and exponent m+2 for m <= -1.  For
    m = 0, j != 0:

        f(0, j, k) = lam^2 (1 - b^j) / (q^{-j} - 1) * (a b^{k-1} (1-b)/(1-q))^j.

    Restricted to b in {q, 1/q} and lam in {1, -1}.
    """
    if b not in (RF_Q, RF_Q.inverse()):
        raise BadParameter("ratio b must be q or 1/q")
    if lam not in (RF_ONE, rf_int(-1)):
        raise BadParameter("unit sign must be 1 or -1")
    if a.is_zero:
        raise BadParameter("module parameter a must be nonzero")
    if (m, j) == (0, 0):
        raise BadParameter("index (0, 0) is excluded")
    one = RF_ONE
    if m == 0:
        lead = lam * lam * (one - b**j) / (q_pow(-j) - one)
        return lead * (a * b ** (k - 1) * (one - b) / (one - RF_Q)) ** j
    base = lam * (one - b) / (one - RF_Q)
    ratio = (one - q_pow(m)) / (one - b**m)
    if m >= 1:
        f_m00 = base**m * ratio
    else:
        f_m00 = (RF_Q / b) * base ** (m + 2) * ratio
    return (a * b**k * (one - b**m) / (one - q_pow(m))) ** j * f_m00


@dataclass(frozen=True)
class Irreducible:
    pass


@dataclass(frozen=True)
class Reducible:
    split_degree: int


def check_graded_irreducible(doc: TableDocument) -> Union[Irreducible, Reducible]:
    """Decide whether the windowed action admits a graded degree split.

    Irreducible iff every degree has dimension 1 and the up-chain f(1,0,k)
    and down-chain f(-1,0,k) coefficients are all nonzero, so any nonzero
    homogeneous vector generates the whole window.  Otherwise the returned
    degree is one at which the generation chain breaks.
    """
    k_min, k_max = doc.k_range
    for k in doc.degrees():
        if doc.dim_at(k) == 0:
            return Reducible(k)
    for k in doc.degrees():
        if k < k_max and doc.entry(1, 0, k).is_zero:
            return Reducible(k)
        if k > k_min and doc.entry(-1, 0, k).is_zero:
            return Reducible(k)
    return Irreducible()
