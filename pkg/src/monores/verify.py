"""Independent exactness and minimality oracles for resolutions.

Everything here is exact: scalars are rationals, ranks come from
fraction-free integer elimination, and no tolerance appears anywhere,
because minimality and exactness are discrete claims.

The workhorse is the strand criterion. Restricting a multigraded complex
to a single multidegree b keeps exactly the faces whose multidegree
divides b and turns each differential into a scalar matrix. The complex
augmented by the quotient module is exact if and only if every strand
satisfies

    dims[j] = ranks[j] + ranks[j+1]   for all j >= 0,

where ranks[j] is the rank of the strand of the degree-j map and
ranks[0] is the rank of the strand of the augmentation (1 when no
generator divides b, else 0). Strands only change when b crosses a
subset lcm, and the homology of the complex is concentrated on such
multidegrees, so checking the lcm lattice suffices; an exhaustive mode
over every multidegree below the top lcm is available for tiny inputs
as a cross-check of that standard fact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .cancellation import minimize_generic
from .monomials import CapExceededError, Monomial, MonomialIdeal
from .taylor import Resolution, build_taylor, lcm_lattice, strip_trailing_zeros

# Exhaustive strand mode enumerates every exponent vector below the top
# lcm; refuse anything beyond toy size.
EXHAUSTIVE_STRAND_CAP = 50_000


class OracleDisagreementError(RuntimeError):
    """Internal oracles disagree: an implementation bug, never user error."""


def matrix_rank_exact(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    Rows are first scaled to integers (rank-preserving), then eliminated
    with the two-term determinant update, whose divisions are exact.
    """
    if not rows or not rows[0]:
        return 0
    work: list[list[int]] = []
    for row in rows:
        scale = 1
        for x in row:
            if isinstance(x, Fraction):
                scale = scale * x.denominator // gcd(scale, x.denominator)
        work.append([int(x * scale) for x in row])
    m, n = len(work), len(work[0])
    rank = 0
    pivot_row = 0
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(pivot_row, m) if work[i][col]), None)
        if pivot is None:
            continue
        work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
        lead = work[pivot_row][col]
        for i in range(pivot_row + 1, m):
            head = work[i][col]
            row_i = work[i]
            row_p = work[pivot_row]
            for j in range(col + 1, n):
                row_i[j] = (row_i[j] * lead - head * row_p[j]) // prev
            row_i[col] = 0
        prev = lead
        pivot_row += 1
        rank += 1
        if pivot_row == m:
            break
    return rank


def compose_check(res: Resolution) -> bool:
    """Exact symbolic check that consecutive differentials compose to zero.

    Contributions are accumulated per (row, column, monomial) so that a
    corrupted complex cannot pass by accidental cross-monomial mixing.
    """
    for degree in range(1, res.top):
        lower = res.diffs[degree]
        upper = res.diffs[degree + 1]
        assert lower is not None and upper is not None
        lower_by_col: dict[int, list[tuple[int, object]]] = {}
        for (ri, ci), entry in lower.entries.items():
            lower_by_col.setdefault(ci, []).append((ri, entry))
        sums: dict[tuple[int, int, tuple[int, ...]], Fraction] = {}
        for (mid, ci), upper_entry in upper.entries.items():
            for ri, lower_entry in lower_by_col.get(mid, ()):
                exps = tuple(
                    a + b
                    for a, b in zip(
                        lower_entry.monomial.exponents, upper_entry.monomial.exponents
                    )
                )
                key = (ri, ci, exps)
                sums[key] = (
                    sums.get(key, Fraction(0))
                    + lower_entry.scalar * upper_entry.scalar
                )
        if any(total != 0 for total in sums.values()):
            return False
    return True


@dataclass(frozen=True)
class StrandReport:
    """Dimensions and differential ranks of one multidegree strand."""

    multidegree: Monomial
    dims: tuple[int, ...]
    ranks: tuple[int, ...]
    exact: bool
    failure_degree: int | None


def _strand_report(res: Resolution, ideal: MonomialIdeal, b: Monomial) -> StrandReport:
    top = res.top
    present: list[dict[int, int]] = []  # module index -> strand-local index
    dims = []
    for degree in range(top + 1):
        local = {}
        for i, face in enumerate(res.modules[degree]):
            if face.mdeg.divides(b):
                local[i] = len(local)
        present.append(local)
        dims.append(len(local))

    ranks = [0] * (top + 1)
    ranks[0] = 0 if any(g.divides(b) for g in ideal.generators) else 1
    for degree in range(1, top + 1):
        rows_present = present[degree - 1]
        cols_present = present[degree]
        if not rows_present or not cols_present:
            continue
        matrix = res.diffs[degree]
        assert matrix is not None
        dense = [[Fraction(0)] * len(cols_present) for _ in rows_present]
        for (ri, ci), entry in matrix.entries.items():
            if ri in rows_present and ci in cols_present:
                dense[rows_present[ri]][cols_present[ci]] = entry.scalar
        ranks[degree] = matrix_rank_exact(dense)

    exact = True
    failure = None
    for degree in range(top + 1):
        above = ranks[degree + 1] if degree + 1 <= top else 0
        if dims[degree] != ranks[degree] + above:
            exact = False
            failure = degree
            break
    return StrandReport(b, tuple(dims), tuple(ranks), exact, failure)


def strand_exactness(
    res: Resolution, ideal: MonomialIdeal, exhaustive: bool = False
) -> list[StrandReport]:
    """One report per relevant multidegree; all exact iff R resolves S/ideal.

    The default iterates the lcm lattice minus the unit. Exhaustive mode
    iterates every multidegree bounded by the top lcm, unit included.
    """
    if exhaustive:
        top = lcm_lattice(ideal).monomials[-1]
        count = 1
        for e in top.exponents:
            count *= e + 1
        if count > EXHAUSTIVE_STRAND_CAP:
            raise CapExceededError(
                f"exhaustive strand check would visit {count} multidegrees"
                f" (cap {EXHAUSTIVE_STRAND_CAP})"
            )
        targets = [
            Monomial(ideal.vars, exps)
            for exps in product(*(range(e + 1) for e in top.exponents))
        ]
    else:
        targets = [b for b in lcm_lattice(ideal).monomials if not b.is_unit]
    return [_strand_report(res, ideal, b) for b in targets]


def strands_all_exact(reports: Sequence[StrandReport]) -> bool:
    return all(r.exact for r in reports)


def minimality_check(res: Resolution) -> bool:
    """True iff no differential entry has monomial part 1."""
    for degree in range(1, res.top + 1):
        matrix = res.diffs[degree]
        assert matrix is not None
        if any(entry.is_invertible for entry in matrix.entries.values()):
            return False
    return True


def betti_oracle(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Path-independent minimal Betti numbers, self-checked for exactness.

    Builds the Taylor complex fresh, minimizes it generically under the
    deterministic pivot order, and reads off the ranks; the result is
    cross-checked against the strand criterion before being returned.
    """
    res = minimize_generic(build_taylor(ideal))
    if not minimality_check(res):
        raise OracleDisagreementError(
            "generic minimization left an invertible entry"
        )
    if not compose_check(res):
        raise OracleDisagreementError(
            "minimized resolution is not a complex (d∘d != 0)"
        )
    reports = strand_exactness(res, ideal)
    bad = [r for r in reports if not r.exact]
    if bad:
        raise OracleDisagreementError(
            f"minimized resolution has an inexact strand at {bad[0].multidegree}"
            f" (degree {bad[0].failure_degree})"
        )
    return strip_trailing_zeros(res.ranks())
