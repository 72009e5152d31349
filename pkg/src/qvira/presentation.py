"""Structural analysis of windowed candidate-module tables.

A table presents coefficients f(h, j, k) for a candidate graded action.
This module checks the bracket-compatibility relation on the window,
performs the diagonal base change that makes the degree-raising operator
act with coefficient 1 (the "omega basis"), extracts the isomorphism
invariants (p, b, a), and runs the internal-relation suite that a genuine
intermediate-series presentation must satisfy.

All checks are exact; violations are data carried in reports, not
exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .field import FieldContext, RF_ONE, RF_Q, RF_ZERO, RationalFunction, q_pow
from .table import TableDocument


@dataclass(frozen=True)
class Violation:
    """One failed instance of the bracket-compatibility relation."""

    h: int
    j: int
    m: int
    n: int
    k: int
    lhs: RationalFunction
    rhs: RationalFunction


def validate_table(
    doc: TableDocument, stop_after: Optional[int] = None
) -> list[Violation]:
    """Check, for all index pairs on the window,

        f(m,n,k) f(h,j,k+m) - f(h,j,k) f(m,n,h+k) = (q^{jm} - q^{nh}) f(h+m,j+n,k)

    reading f as 0 at omitted entries and at the excluded index (0, 0).
    Instances whose target index (h+m, j+n) falls outside the window, or
    whose degrees leave the k-range or touch a dimension-0 degree, are
    not checkable and are skipped.  Returns the list of violations (empty
    means valid); stop_after caps the number collected.
    """
    h_min, h_max = doc.h_range
    j_min, j_max = doc.j_range
    k_min, k_max = doc.k_range
    ctx = doc.context
    entry = doc.entry
    violations: list[Violation] = []
    indices = [
        (h, j)
        for h in range(h_min, h_max + 1)
        for j in range(j_min, j_max + 1)
        if (h, j) != (0, 0)
    ]
    for h, j in indices:
        for m, n in indices:
            target = (h + m, j + n)
            if target != (0, 0) and not (
                h_min <= target[0] <= h_max and j_min <= target[1] <= j_max
            ):
                continue
            scalar = ctx.reduce(q_pow(j * m) - q_pow(n * h))
            for k in range(k_min, k_max + 1):
                degs = (k, k + m, k + h, k + h + m)
                if not all(k_min <= d <= k_max for d in degs):
                    continue
                if not all(doc.dim_at(d) == 1 for d in degs):
                    continue
                lhs = entry(m, n, k) * entry(h, j, k + m) - entry(h, j, k) * entry(
                    m, n, h + k
                )
                rhs = RF_ZERO if target == (0, 0) else scalar * entry(h + m, j + n, k)
                if lhs != rhs:
                    violations.append(Violation(h, j, m, n, k, lhs, rhs))
                    if stop_after is not None and len(violations) >= stop_after:
                        return violations
    return violations


@dataclass(frozen=True)
class Nondegenerate:
    pass


@dataclass(frozen=True)
class Degenerate:
    k: int


@dataclass(frozen=True)
class HasZeroDims:
    k: int


def degeneracy_test(doc: TableDocument) -> Union[Nondegenerate, Degenerate, HasZeroDims]:
    """Locate a degree where the up-down composite f(1,0,k) f(-1,0,k+1) dies."""
    for k in doc.degrees():
        if doc.dim_at(k) == 0:
            return HasZeroDims(k)
    k_min, k_max = doc.k_range
    for k in range(k_min, k_max):
        if (doc.entry(1, 0, k) * doc.entry(-1, 0, k + 1)).is_zero:
            return Degenerate(k)
    return Nondegenerate()


class DegenerateTable(Exception):
    """Normalization hit a zero degree-raising coefficient."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"degree-raising coefficient vanishes at k={k}")


class MissingData(Exception):
    pass


class ZeroEntry(Exception):
    def __init__(self, h: int, j: int, k: int):
        self.index = (h, j, k)
        super().__init__(f"entry ({h},{j},{k}) is zero")


class NotConstant(Exception):
    """An invariant that must be k-independent changed value."""

    def __init__(self, invariant: str, k: int, value, reference):
        self.invariant = invariant
        self.k = k
        self.value = value
        self.reference = reference
        super().__init__(f"{invariant} changes at k={k}")


@dataclass
class NormalizedTable:
    """Table in the omega basis: f(1, 0, k) rescaled to 1 everywhere.

    scalings maps each degree k to the nonzero factor s_k with
    f_omega(h,j,k) = f(h,j,k) s_k / s_{k+h}; s_anchor = 1.  Entries with
    h = 0 coincide with the raw table.
    """

    base: TableDocument
    anchor: int
    scalings: dict[int, RationalFunction]
    entries: dict[tuple[int, int, int], RationalFunction] = field(default_factory=dict)

    def f_omega(self, h: int, j: int, k: int) -> RationalFunction:
        return self.entries.get((h, j, k), RF_ZERO)


def omega_normalize(doc: TableDocument) -> NormalizedTable:
    """Diagonal base change normalizing the degree-raising coefficients.

    The anchor degree is 0 when the window contains it, else k_min.
    Raises DegenerateTable when some required f(1, 0, k) vanishes.
    """
    k_min, k_max = doc.k_range
    if any(dim != 1 for dim in doc.dims):
        raise ValueError("omega normalization needs all degree dimensions 1")
    anchor = 0 if k_min <= 0 <= k_max else k_min
    scalings: dict[int, RationalFunction] = {anchor: RF_ONE}
    for k in range(anchor, k_max):
        up = doc.entry(1, 0, k)
        if up.is_zero:
            raise DegenerateTable(k)
        scalings[k + 1] = scalings[k] * up
    for k in range(anchor, k_min, -1):
        up = doc.entry(1, 0, k - 1)
        if up.is_zero:
            raise DegenerateTable(k - 1)
        scalings[k - 1] = scalings[k] / up
    nt = NormalizedTable(doc, anchor, scalings)
    for (h, j, k), value in doc.entries.items():
        nt.entries[(h, j, k)] = value * scalings[k] / scalings[k + h]
    return nt


@dataclass(frozen=True)
class InvariantTriple:
    """Isomorphism invariants read off the omega basis.

    p is the constant up-down eigenvalue f(1,0,k) f(-1,0,k+1); b is the
    constant ratio f(0,1,k+1)/f(0,1,k); a is the value of f(0,1,k) b^{-k}
    in the k = 0 convention.
    """

    p: RationalFunction
    b: RationalFunction
    a: RationalFunction


def extract_invariants(nt: NormalizedTable) -> InvariantTriple:
    """Compute (p, b, a), insisting on exact k-independence.

    Raises MissingData when the window carries too few entries, ZeroEntry
    when some f(0, 1, k) vanishes, and NotConstant when p or the ratio b
    varies with k.
    """
    doc = nt.base
    k_min, k_max = doc.k_range
    if k_max - k_min < 1:
        raise MissingData("window has fewer than two degrees")

    p = None
    for k in range(k_min, k_max):
        p_k = nt.f_omega(1, 0, k) * nt.f_omega(-1, 0, k + 1)
        if p is None:
            p = p_k
        elif p_k != p:
            raise NotConstant("p", k, p_k, p)
    if p is None or p.is_zero:
        raise MissingData("no up-down composite available on the window")

    samples = []
    for k in doc.degrees():
        value = nt.f_omega(0, 1, k)
        if value.is_zero:
            raise ZeroEntry(0, 1, k)
        samples.append((k, value))
    if len(samples) < 2:
        raise MissingData("need at least two f(0, 1, k) samples")
    b = samples[1][1] / samples[0][1]
    for (k, value), (_, nxt) in zip(samples, samples[1:]):
        ratio = nxt / value
        if ratio != b:
            raise NotConstant("b", k, ratio, b)
    a = samples[0][1] * b ** (-samples[0][0])
    return InvariantTriple(p=p, b=b, a=a)


@dataclass(frozen=True)
class RelationFailure:
    index: tuple
    lhs: RationalFunction
    rhs: RationalFunction


@dataclass
class RelationReport:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    checked: int = 0
    failures: list[RelationFailure] = field(default_factory=list)


def _finish(report: RelationReport) -> RelationReport:
    if report.checked == 0:
        report.status = "skipped"
    elif report.failures:
        report.status = "fail"
    else:
        report.status = "pass"
    return report


def verify_relation_suite(
    nt: NormalizedTable, invariants: InvariantTriple
) -> list[RelationReport]:
    """Run the internal-relation suite of an intermediate-series presentation.

    All relations are stated in the omega basis, where the underlying
    scaling unit enters only through its square, the invariant p.
    Relations whose index
    requirements exceed the window are reported as skipped, never as
    silently passed.
    """
    doc = nt.base
    red = doc.context.reduce
    h_min, h_max = doc.h_range
    j_min, j_max = doc.j_range
    k_min, k_max = doc.k_range
    p, b, a = invariants.p, invariants.b, invariants.a
    one = RF_ONE
    reports = []

    def h_window():
        return [m for m in range(h_min, h_max + 1) if m != 0]

    def ks_for(m):
        return [k for k in range(k_min, k_max + 1) if k_min <= k + m <= k_max]

    def base_value(m):
        # f_omega(m, 0, k) at the smallest applicable k; k-independence is
        # the subject of the constancy relation.
        ks = ks_for(m)
        return nt.f_omega(m, 0, ks[0]) if ks else None

    # f_omega(m, 0, k) independent of k.
    rep = RelationReport("raising-power-constancy", "skipped")
    for m in h_window():
        ks = ks_for(m)
        if len(ks) < 2:
            continue
        reference = nt.f_omega(m, 0, ks[0])
        for k in ks[1:]:
            rep.checked += 1
            value = nt.f_omega(m, 0, k)
            if value != reference:
                rep.failures.append(RelationFailure((m, 0, k), value, reference))
    reports.append(_finish(rep))

    # (f(0,1,k) - f(0,1,k+1)) (f(0,-1,k) - f(0,-1,k+1)) = (1-q)(1-1/q).
    rep = RelationReport("adjacent-difference-product", "skipped")
    if j_min <= -1 and j_max >= 1:
        target = red((one - RF_Q) * (one - q_pow(-1)))
        for k in range(k_min, k_max):
            rep.checked += 1
            lhs = (nt.f_omega(0, 1, k) - nt.f_omega(0, 1, k + 1)) * (
                nt.f_omega(0, -1, k) - nt.f_omega(0, -1, k + 1)
            )
            if lhs != target:
                rep.failures.append(RelationFailure((k,), lhs, target))
    reports.append(_finish(rep))

    # Ladder between consecutive raising powers:
    # (1-b^{m+1})/(1-q^{m+1}) F(m+1) = p (1-b)(1-b^m)/((1-q)(1-q^m)) F(m).
    rep = RelationReport("raising-power-ladder", "skipped")
    for m in h_window():
        if m + 1 == 0 or not h_min <= m + 1 <= h_max:
            continue
        f_m = base_value(m)
        f_m1 = base_value(m + 1)
        if f_m is None or f_m1 is None:
            continue
        rep.checked += 1
        lhs = red((one - b ** (m + 1)) / (one - q_pow(m + 1))) * f_m1
        rhs = (
            p
            * red((one - b) * (one - b**m) / ((one - RF_Q) * (one - q_pow(m))))
            * f_m
        )
        if lhs != rhs:
            rep.failures.append(RelationFailure((m,), lhs, rhs))
    reports.append(_finish(rep))

    # f_omega(m, 1, k) = a b^k (1-b^m)/(1-q^m) f_omega(m, 0, k).
    rep = RelationReport("first-level-lift", "skipped")
    if j_max >= 1:
        for m in h_window():
            for k in ks_for(m):
                rep.checked += 1
                lhs = nt.f_omega(m, 1, k)
                rhs = a * red(b**k * (one - b**m) / (one - q_pow(m))) * nt.f_omega(
                    m, 0, k
                )
                if lhs != rhs:
                    rep.failures.append(RelationFailure((m, 1, k), lhs, rhs))
    reports.append(_finish(rep))

    # f_omega(m, j, k) = (a b^k (1-b^m)/(1-q^m))^j F(m).
    rep = RelationReport("column-power-law", "skipped")
    for m in h_window():
        f_m = base_value(m)
        if f_m is None:
            continue
        for j in range(j_min, j_max + 1):
            for k in ks_for(m):
                rep.checked += 1
                lhs = nt.f_omega(m, j, k)
                rhs = (a * red(b**k * (one - b**m) / (one - q_pow(m)))) ** j * f_m
                if lhs != rhs:
                    rep.failures.append(RelationFailure((m, j, k), lhs, rhs))
    reports.append(_finish(rep))

    # f_omega(1, j, k-1) - f_omega(1, j, k) = (q^{-j} - 1) f_omega(0, j, k).
    rep = RelationReport("descent-identity", "skipped")
    if h_max >= 1:
        for j in range(j_min, j_max + 1):
            if j == 0:
                continue
            for k in range(k_min + 1, k_max):
                rep.checked += 1
                lhs = nt.f_omega(1, j, k - 1) - nt.f_omega(1, j, k)
                rhs = red(q_pow(-j) - one) * nt.f_omega(0, j, k)
                if lhs != rhs:
                    rep.failures.append(RelationFailure((1, j, k), lhs, rhs))
    reports.append(_finish(rep))

    # f_omega(0, j, k) = p (1-b^j)/(q^{-j}-1) (a b^{k-1} (1-b)/(1-q))^j.
    rep = RelationReport("diagonal-closed-form", "skipped")
    for j in range(j_min, j_max + 1):
        if j == 0:
            continue
        lead = p * red((one - b**j) / (q_pow(-j) - one))
        for k in doc.degrees():
            rep.checked += 1
            lhs = nt.f_omega(0, j, k)
            rhs = lead * (a * red(b ** (k - 1) * (one - b) / (one - RF_Q))) ** j
            if lhs != rhs:
                rep.failures.append(RelationFailure((0, j, k), lhs, rhs))
    reports.append(_finish(rep))

    return reports
