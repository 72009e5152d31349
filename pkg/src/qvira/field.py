"""Exact arithmetic over the coefficient field Q(q, a).

Values are reduced fractions of sparse bivariate polynomials in the
indeterminates q and a, with arbitrary-precision rational coefficients.
Canonical form of a RationalFunction:

  * gcd(num, den) is a unit,
  * all coefficients are integers with overall content 1,
  * the leading coefficient of den is positive.

Leading terms are taken under the fixed monomial order: total degree
descending, then q-degree descending.  This makes equality structural
and printing deterministic.

Negative powers of q and a live in denominators; monomial exponents are
always nonnegative.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

BigRational = Fraction

# A monomial q^e_q * a^e_a is the exponent pair (e_q, e_a).
Monomial2 = tuple[int, int]


class FieldError(Exception):
    """Base class for arithmetic errors in the coefficient field."""


class ZeroDenominator(FieldError):
    pass


class DivisionByZero(FieldError):
    pass


class PoleAtPoint(FieldError):
    """Numeric substitution hit a zero of the denominator."""


class NotQuadratic(FieldError):
    """solve_quadratic was called with a vanishing leading coefficient."""


def _mono_key(m: Monomial2) -> tuple[int, int]:
    # Sort key realizing the fixed order: total degree, then q-degree.
    return (m[0] + m[1], m[0])


class Poly2:
    """Sparse bivariate polynomial in q and a over Q.

    Invariant: no stored coefficient is zero; the zero polynomial has an
    empty term map.  Instances are immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[dict[Monomial2, Fraction]] = None):
        clean: dict[Monomial2, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = Fraction(coeff)
        self.terms = clean
        self._hash: Optional[int] = None

    @staticmethod
    def zero() -> "Poly2":
        return _P_ZERO

    @staticmethod
    def const(c) -> "Poly2":
        c = Fraction(c)
        return Poly2({(0, 0): c}) if c else _P_ZERO

    @staticmethod
    def var_q() -> "Poly2":
        return _P_Q

    @staticmethod
    def var_a() -> "Poly2":
        return _P_A

    @staticmethod
    def monomial(e_q: int, e_a: int, coeff=1) -> "Poly2":
        if e_q < 0 or e_a < 0:
            raise ValueError("monomial exponents must be nonnegative")
        return Poly2({(e_q, e_a): Fraction(coeff)})

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return self.terms.get((0, 0), Fraction(0))

    def leading_monomial(self) -> Monomial2:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_mono_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly2") -> "Poly2":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = terms.get(mono, _F0) + coeff
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        out = Poly2.__new__(Poly2)
        out.terms = terms
        out._hash = None
        return out

    def __neg__(self) -> "Poly2":
        out = Poly2.__new__(Poly2)
        out.terms = {m: -c for m, c in self.terms.items()}
        out._hash = None
        return out

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        if self.is_zero or other.is_zero:
            return _P_ZERO
        if len(self.terms) == 1:
            ((eq, ea), c) = next(iter(self.terms.items()))
            out = Poly2.__new__(Poly2)
            out.terms = {(eq + mq, ea + ma): c * d for (mq, ma), d in other.terms.items()}
            out._hash = None
            return out
        if len(other.terms) == 1:
            return other * self
        terms: dict[Monomial2, Fraction] = {}
        for (eq1, ea1), c1 in self.terms.items():
            for (eq2, ea2), c2 in other.terms.items():
                mono = (eq1 + eq2, ea1 + ea2)
                s = terms.get(mono, _F0) + c1 * c2
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        out = Poly2.__new__(Poly2)
        out.terms = terms
        out._hash = None
        return out

    def scale(self, c) -> "Poly2":
        c = Fraction(c)
        if not c:
            return _P_ZERO
        out = Poly2.__new__(Poly2)
        out.terms = {m: co * c for m, co in self.terms.items()}
        out._hash = None
        return out

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("Poly2 power must be nonnegative")
        result = _P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly2(0)"
        parts = [f"{c}*q^{m[0]}*a^{m[1]}" for m, c in self.sorted_terms()]
        return "Poly2(" + " + ".join(parts) + ")"

    def sorted_terms(self) -> Iterator[tuple[Monomial2, Fraction]]:
        """Terms in the fixed monomial order, leading term first."""
        for mono in sorted(self.terms, key=_mono_key, reverse=True):
            yield mono, self.terms[mono]

    def min_exponents(self) -> Monomial2:
        if self.is_zero:
            raise ValueError("zero polynomial")
        return (
            min(m[0] for m in self.terms),
            min(m[1] for m in self.terms),
        )

    def evaluate(self, q0: Fraction, a0: Fraction) -> Fraction:
        total = Fraction(0)
        for (eq, ea), c in self.terms.items():
            total += c * q0**eq * a0**ea
        return total


_F0 = Fraction(0)
_P_ZERO = Poly2()
_P_ONE = Poly2({(0, 0): Fraction(1)})
_P_Q = Poly2({(1, 0): Fraction(1)})
_P_A = Poly2({(0, 1): Fraction(1)})


def _unit_normal(p: Poly2) -> Poly2:
    """Scale p to integer coefficients, content 1, positive leading coeff."""
    if p.is_zero:
        return p
    denlcm = 1
    for c in p.terms.values():
        denlcm = denlcm * c.denominator // math.gcd(denlcm, c.denominator)
    nums = [int(c * denlcm) for c in p.terms.values()]
    content = 0
    for n in nums:
        content = math.gcd(content, n)
    scale = Fraction(denlcm, content)
    if p.leading_coeff() < 0:
        scale = -scale
    return p.scale(scale)


# sympy's polynomial rings back the non-monomial gcd / exact-division /
# factorization paths; everything hot in practice is a monomial and never
# reaches them.
_SYMPY_RING = None


def _ring():
    global _SYMPY_RING
    if _SYMPY_RING is None:
        from sympy.polys.domains import QQ
        from sympy.polys.rings import ring

        R, _, _ = ring("q,a", QQ)
        _SYMPY_RING = (R, QQ)
    return _SYMPY_RING


def _to_sympy(p: Poly2):
    R, QQ = _ring()
    return R.from_dict({m: QQ(c.numerator, c.denominator) for m, c in p.terms.items()})


def _from_sympy(sp) -> Poly2:
    return Poly2(
        {
            (int(m[0]), int(m[1])): Fraction(int(c.numerator), int(c.denominator))
            for m, c in sp.terms()
        }
    )


def poly_gcd(p: Poly2, r: Poly2) -> Poly2:
    """Gcd of two polynomials, unit-normalized (content 1, positive lead).

    gcd(p, 0) is p itself, normalized.
    """
    if p.is_zero:
        return _unit_normal(r)
    if r.is_zero:
        return _unit_normal(p)
    if p.is_monomial or r.is_monomial:
        pq, pa = p.min_exponents()
        rq, ra = r.min_exponents()
        return Poly2.monomial(min(pq, rq), min(pa, ra))
    g = _from_sympy(_to_sympy(p).gcd(_to_sympy(r)))
    return _unit_normal(g)


def poly_exact_div(p: Poly2, d: Poly2) -> Poly2:
    """Divide p by an exact divisor d."""
    if d.is_zero:
        raise DivisionByZero("polynomial division by zero")
    if p.is_zero:
        return _P_ZERO
    if d.is_monomial:
        ((dq, da), dc) = next(iter(d.terms.items()))
        terms = {}
        for (eq, ea), c in p.terms.items():
            if eq < dq or ea < da:
                raise ValueError("inexact monomial division")
            terms[(eq - dq, ea - da)] = c / dc
        return Poly2(terms)
    quo, rem = _to_sympy(p).div(_to_sympy(d))
    if rem:
        raise ValueError("inexact polynomial division")
    return _from_sympy(quo)


def _sqrt_fraction(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    sn = math.isqrt(c.numerator)
    sd = math.isqrt(c.denominator)
    if sn * sn != c.numerator or sd * sd != c.denominator:
        return None
    return Fraction(sn, sd)


def poly_sqrt(p: Poly2) -> Optional[Poly2]:
    """Polynomial square root of p, or None if p is not a perfect square.

    Sign convention: the returned root has a positive leading coefficient.
    """
    if p.is_zero:
        return _P_ZERO
    if p.is_monomial:
        ((eq, ea), c) = next(iter(p.terms.items()))
        if eq % 2 or ea % 2:
            return None
        sc = _sqrt_fraction(c)
        if sc is None:
            return None
        return Poly2.monomial(eq // 2, ea // 2, sc)
    if p.leading_coeff() < 0:
        return None
    sp = _to_sympy(p)
    content, factors = sp.primitive()
    sc = _sqrt_fraction(Fraction(int(content.numerator), int(content.denominator)))
    if sc is None:
        return None
    root = _to_sympy(Poly2.const(sc))
    for fac, mult in factors.factor_list()[1]:
        if mult % 2:
            return None
        root = root * fac ** (mult // 2)
    result = _from_sympy(root)
    if result.leading_coeff() < 0:
        result = -result
    return result


class RationalFunction:
    """Element of Q(q, a) in canonical reduced form.

    Equality is structural; the canonical form is unique, so two equal
    field values always compare equal as Python objects.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly2, den: Poly2, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "RationalFunction":
        return RationalFunction(Poly2.const(n), _P_ONE, _canonical=True)

    @staticmethod
    def from_fraction(c: Fraction) -> "RationalFunction":
        num = Poly2.const(c.numerator)
        den = Poly2.const(c.denominator)
        return RationalFunction(num, den, _canonical=True)

    @staticmethod
    def var_q() -> "RationalFunction":
        return RF_Q

    @staticmethod
    def var_a() -> "RationalFunction":
        return RF_A

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num == _P_ONE and self.den == _P_ONE

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero or other.is_zero:
            return RF_ZERO
        if self.is_one:
            return other
        if other.is_one:
            return self
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero:
            raise DivisionByZero("division by the zero field element")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if n == 0:
            return RF_ONE
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero:
            return RF_ZERO
        # num and den are coprime, so their powers only need renormalizing
        # for content and sign.
        return RationalFunction(self.num**n, self.den**n)

    # -- structure --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def order_key(self):
        """Deterministic total-order key (polynomials sort before fractions)."""
        return (
            0 if self.den == _P_ONE else 1,
            tuple(sorted(self.den.terms.items())),
            tuple(sorted(self.num.terms.items())),
        )


def normalize(num: Poly2, den: Poly2) -> RationalFunction:
    """Canonical reduced fraction num/den."""
    return RationalFunction(num, den)


def _canonicalize(num: Poly2, den: Poly2) -> tuple[Poly2, Poly2]:
    if den.is_zero:
        raise ZeroDenominator("denominator is the zero polynomial")
    if num.is_zero:
        return _P_ZERO, _P_ONE
    g = poly_gcd(num, den)
    if g != _P_ONE:
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
    # Joint scaling: integer coefficients, overall content 1, positive
    # leading denominator coefficient.
    denlcm = 1
    for c in num.terms.values():
        denlcm = denlcm * c.denominator // math.gcd(denlcm, c.denominator)
    for c in den.terms.values():
        denlcm = denlcm * c.denominator // math.gcd(denlcm, c.denominator)
    content = 0
    for c in num.terms.values():
        content = math.gcd(content, int(c * denlcm))
    for c in den.terms.values():
        content = math.gcd(content, int(c * denlcm))
    scale = Fraction(denlcm, content)
    if den.leading_coeff() < 0:
        scale = -scale
    if scale != 1:
        num = num.scale(scale)
        den = den.scale(scale)
    return num, den


RF_ZERO = RationalFunction(_P_ZERO, _P_ONE, _canonical=True)
RF_ONE = RationalFunction(_P_ONE, _P_ONE, _canonical=True)
RF_Q = RationalFunction(_P_Q, _P_ONE, _canonical=True)
RF_A = RationalFunction(_P_A, _P_ONE, _canonical=True)


@functools.lru_cache(maxsize=None)
def rf_int(n: int) -> RationalFunction:
    return RationalFunction.from_int(n)


@functools.lru_cache(maxsize=None)
def q_pow(n: int) -> RationalFunction:
    """q^n as a field element, for any integer n."""
    if n >= 0:
        return RationalFunction(Poly2.monomial(n, 0), _P_ONE, _canonical=True)
    return RationalFunction(_P_ONE, Poly2.monomial(-n, 0), _canonical=True)


def sign_pow(m: int) -> RationalFunction:
    """(-1)^m as a field element."""
    return RF_ONE if m % 2 == 0 else rf_int(-1)


@dataclass(frozen=True)
class FieldContext:
    """Evaluation mode: symbolic over Q(q, a), or numeric at rational (q0, a0).

    A rational q0 outside {0, 1, -1} is never a root of unity, so numeric
    mode always satisfies the genericity hypothesis on q.
    """

    q0: Optional[Fraction] = None
    a0: Optional[Fraction] = None

    def __post_init__(self):
        if (self.q0 is None) != (self.a0 is None):
            raise ValueError("numeric mode needs both q0 and a0")
        if self.q0 is not None:
            if self.q0 in (0, 1, -1):
                raise ValueError("numeric q must lie outside {0, 1, -1}")
            if self.a0 == 0:
                raise ValueError("numeric a must be nonzero")

    @staticmethod
    def symbolic() -> "FieldContext":
        return FieldContext()

    @staticmethod
    def numeric(q0, a0) -> "FieldContext":
        return FieldContext(Fraction(q0), Fraction(a0))

    @property
    def is_numeric(self) -> bool:
        return self.q0 is not None

    def reduce(self, x: RationalFunction) -> RationalFunction:
        """Identity in symbolic mode, substitution in numeric mode."""
        return substitute(x, self) if self.is_numeric else x


def substitute(x: RationalFunction, ctx: FieldContext) -> RationalFunction:
    """Evaluate x at (q0, a0); the result is a constant field element."""
    if not ctx.is_numeric:
        raise ValueError("substitute requires a numeric context")
    dval = x.den.evaluate(ctx.q0, ctx.a0)
    if dval == 0:
        raise PoleAtPoint(f"denominator vanishes at q={ctx.q0}, a={ctx.a0}")
    nval = x.num.evaluate(ctx.q0, ctx.a0)
    return RationalFunction.from_fraction(nval / dval)


@dataclass(frozen=True)
class TwoRoots:
    r1: RationalFunction
    r2: RationalFunction


@dataclass(frozen=True)
class RepeatedRoot:
    root: RationalFunction


@dataclass(frozen=True)
class RootsNotInField:
    pass


def rf_sqrt(x: RationalFunction) -> Optional[RationalFunction]:
    """Square root of x in Q(q, a), or None when no such element exists.

    With gcd(num, den) a unit, x is a square iff num*den is a square
    polynomial: sqrt(x) = sqrt(num*den)/den.
    """
    if x.is_zero:
        return RF_ZERO
    s = poly_sqrt(x.num * x.den)
    if s is None:
        return None
    return RationalFunction(s, x.den)


def solve_quadratic(
    alpha: RationalFunction, beta: RationalFunction, gamma: RationalFunction
):
    """Exact roots of alpha*x^2 + beta*x + gamma over Q(q, a).

    Returns TwoRoots (distinct roots, deterministic order), RepeatedRoot,
    or RootsNotInField when the discriminant is not a square in the field.
    """
    if alpha.is_zero:
        raise NotQuadratic("leading coefficient is zero")
    disc = beta * beta - rf_int(4) * alpha * gamma
    if disc.is_zero:
        return RepeatedRoot(-beta / (rf_int(2) * alpha))
    s = rf_sqrt(disc)
    if s is None:
        return RootsNotInField()
    twoa = rf_int(2) * alpha
    r1 = (-beta + s) / twoa
    r2 = (-beta - s) / twoa
    r1, r2 = sorted((r1, r2), key=RationalFunction.order_key)
    return TwoRoots(r1, r2)
