"""Dominance classification of monomial generating sets.

A variable is dominant for a generator, relative to a reference set, when
its exponent there strictly exceeds its exponent in every other member of
the set. A generator with a dominant variable is dominant; a set whose
members are all dominant is a dominant set. Classifying an ideal by the
number p of nondominant generators splits the ideals this package can
resolve in closed form: p = 0 (dominant), p = 1 (semidominant), p = 2.

Two consequences worth keeping in mind while reading the code: distinct
generators can never share a dominant variable, so a dominant subset of
an n-variable ring has at most n members; and any one- or two-element
subset of a minimal generating set is automatically dominant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .monomials import CapExceededError, IdealError, Monomial, MonomialIdeal

# Exhaustive subset enumeration is required (dominance of subsets is not
# monotone in any way the search could exploit), so cap the generator count.
SUBSET_SEARCH_CAP = 24


@dataclass(frozen=True)
class DominanceReport:
    """Per-generator dominant variables plus the derived class label."""

    per_generator: tuple[tuple[int, frozenset[int]], ...]
    nondominant_indices: tuple[int, ...]
    p: int
    class_label: str


def class_label_for(p: int) -> str:
    if p == 0:
        return "dominant"
    if p == 1:
        return "semidominant"
    return f"{p}-semidominant"


def dominant_variables(index: int, generators: Sequence[Monomial]) -> frozenset[int]:
    """Variables whose exponent in generators[index] beats every other member.

    For a singleton reference set every variable with positive exponent
    qualifies (there is no rival to beat).
    """
    if not generators:
        raise IdealError("reference set is empty")
    m = generators[index]
    found = []
    for v, e in enumerate(m.exponents):
        if e == 0:
            continue
        if all(
            other.exponents[v] < e
            for j, other in enumerate(generators)
            if j != index
        ):
            found.append(v)
    return frozenset(found)


def classify(ideal: MonomialIdeal) -> DominanceReport:
    """Partition the generators into dominant and nondominant and label the ideal."""
    gens = ideal.generators
    per_generator = tuple(
        (i, dominant_variables(i, gens)) for i in range(len(gens))
    )
    nondominant = tuple(i for i, dom in per_generator if not dom)
    p = len(nondominant)
    return DominanceReport(per_generator, nondominant, p, class_label_for(p))


def is_dominant_subset(subset: Sequence[Monomial]) -> bool:
    """True iff every member of the subset is dominant relative to the subset.

    Dominance is always evaluated relative to the subset itself, not to
    any larger ambient set. A singleton is dominant unless it is the unit.
    """
    if not subset:
        raise IdealError("dominant-subset test on an empty collection")
    return all(dominant_variables(i, subset) for i in range(len(subset)))


def largest_dominant_subset_with(
    ideal: MonomialIdeal, nondominant_index: int
) -> tuple[int, tuple[int, ...]]:
    """Largest dominant subset of the generators containing the given one.

    Requires a semidominant ideal (p = 1) whose nondominant generator is
    the given index. Enumerates subsets in decreasing cardinality with an
    early exit on the first dominant hit, so the witness is the
    lexicographically least one of maximal size. The search is exhaustive
    within each size: subsets of a dominant set need not stay dominant,
    so no pruning by inclusion is sound.
    """
    if len(ideal) > SUBSET_SEARCH_CAP:
        raise CapExceededError(
            f"subset search supports at most {SUBSET_SEARCH_CAP} generators,"
            f" got {len(ideal)}"
        )
    report = classify(ideal)
    if report.p != 1 or report.nondominant_indices != (nondominant_index,):
        raise IdealError(
            "largest_dominant_subset_with needs a semidominant ideal and its"
            " nondominant generator"
        )
    gens = ideal.generators
    others = [i for i in range(len(gens)) if i != nondominant_index]
    for size in range(len(gens), 0, -1):
        for combo in combinations(others, size - 1):
            indices = tuple(sorted(combo + (nondominant_index,)))
            if is_dominant_subset([gens[i] for i in indices]):
                return size, indices
    raise AssertionError("unreachable: a singleton subset is always dominant")


def is_generic(ideal: MonomialIdeal) -> bool:
    """True iff no variable has the same nonzero exponent in two generators."""
    for v in range(len(ideal.vars)):
        seen: set[int] = set()
        for g in ideal.generators:
            e = g.exponents[v]
            if e == 0:
                continue
            if e in seen:
                return False
            seen.add(e)
    return True


def is_complete_intersection(ideal: MonomialIdeal) -> bool:
    """True iff the generators are pairwise coprime (no shared variable)."""
    for v in range(len(ideal.vars)):
        users = sum(1 for g in ideal.generators if g.exponents[v] > 0)
        if users > 1:
            return False
    return True
