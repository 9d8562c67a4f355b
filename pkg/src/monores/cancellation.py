"""Pivot-based change of basis and consecutive cancellation of resolutions.

The basic move is Gaussian: given an invertible entry (the pivot) at
(row tau, column sigma) of the degree-j differential, a change of basis
turns the pivot column into the unit column at tau and the pivot row
into the unit row at sigma, updating every other entry (c, d) by the
usual fill-in rule

    b_cd = a_cd - a_rd * a_cs / a_rs.

Because the pivot's monomial part is 1, the two faces have equal
multidegree, the fill-in terms all carry the monomial
mdeg(d) / mdeg(c), and the multidegrees of entries never change. The
change of basis also zeroes the sigma row of the degree-(j+1) matrix and
the tau column of the degree-(j-1) matrix, so the pair (sigma, tau)
spans a split rank-one subcomplex that can be deleted outright: that
deletion is a cancellation, and it shrinks two consecutive free modules
by one each while the quotient stays a resolution of the same module.

Strategies drive which pivots get cancelled. The face/facet eliminator
only cancels pivots whose row face is a facet of its column face (that
is the regime in which dominance theory guarantees order-independence);
the generic minimizer cancels any invertible entry and always reaches a
minimal resolution, because fill-in can create invertible entries
between faces that are not facet-related and thereby rescue states the
restricted eliminator cannot leave.

All public functions leave their input resolution untouched and return a
fresh one; the loop drivers mutate a private working copy internally.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .dominance import classify
from .monomials import IdealError, Monomial, MonomialIdeal, lcm
from .taylor import (
    DifferentialMatrix,
    Entry,
    Face,
    Resolution,
    _check_cap,
    _mdeg_by_mask,
)


@dataclass(frozen=True)
class CancellationEvent:
    """One cancellation: the removed face/row pair and the pivot used."""

    sigma: Face
    tau: Face
    pivot_scalar: Fraction
    strategy_tag: str


@dataclass
class EliminationOutcome:
    """Result of a face/facet elimination run.

    status is "completed" when no face/facet pair of equal multidegree is
    left to cancel and no multidegree is shared by several surviving
    faces, or when the strategy simply ran out of instructions while
    cancellable pairs remain. status is "stuck" when repeated
    multidegrees survive but no invertible face/facet entry exists
    anywhere; the witness lists the faces of one such multidegree.
    """

    resolution: Resolution
    status: str  # "completed" | "stuck"
    stuck_witness: list[Face] | None = None


@dataclass(frozen=True)
class Deterministic:
    """Always cancel the first candidate in (degree, column, row) order."""


@dataclass(frozen=True)
class SeededRandom:
    """Cancel a uniformly random current candidate, reproducibly."""

    seed: int


@dataclass(frozen=True)
class Scripted:
    """Cancel exactly the given (sigma members, tau members) pairs, in order."""

    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __init__(self, pairs) -> None:
        normalized = tuple(
            (tuple(sorted(sigma)), tuple(sorted(tau))) for sigma, tau in pairs
        )
        object.__setattr__(self, "pairs", normalized)


Strategy = Deterministic | SeededRandom | Scripted


class _Work:
    """Mutable face-keyed view of a resolution, for efficient cancellation."""

    __slots__ = ("modules", "by_col", "by_row", "trail")

    def __init__(self, res: Resolution) -> None:
        self.modules: list[list[Face]] = [list(m) for m in res.modules]
        self.by_col: list[dict[Face, dict[Face, Entry]]] = [{}]
        self.by_row: list[dict[Face, dict[Face, Entry]]] = [{}]
        self.trail: list[CancellationEvent] = list(res.trail)
        for degree in range(1, res.top + 1):
            matrix = res.diffs[degree]
            assert matrix is not None
            by_col: dict[Face, dict[Face, Entry]] = {}
            by_row: dict[Face, dict[Face, Entry]] = {}
            for (ri, ci), entry in matrix.entries.items():
                row, col = matrix.rows[ri], matrix.cols[ci]
                by_col.setdefault(col, {})[row] = entry
                by_row.setdefault(row, {})[col] = entry
            self.by_col.append(by_col)
            self.by_row.append(by_row)

    @property
    def top(self) -> int:
        return len(self.modules) - 1

    def freeze(self) -> Resolution:
        diffs: list[DifferentialMatrix | None] = [None]
        for degree in range(1, self.top + 1):
            rows = list(self.modules[degree - 1])
            cols = list(self.modules[degree])
            row_pos = {f: i for i, f in enumerate(rows)}
            col_pos = {f: i for i, f in enumerate(cols)}
            entries = {
                (row_pos[row], col_pos[col]): entry
                for col, col_entries in self.by_col[degree].items()
                for row, entry in col_entries.items()
            }
            diffs.append(DifferentialMatrix(rows, cols, entries))
        return Resolution([list(m) for m in self.modules], diffs, list(self.trail))

    def get(self, degree: int, row: Face, col: Face) -> Entry | None:
        return self.by_col[degree].get(col, {}).get(row)

    def set(self, degree: int, row: Face, col: Face, entry: Entry) -> None:
        self.by_col[degree].setdefault(col, {})[row] = entry
        self.by_row[degree].setdefault(row, {})[col] = entry

    def delete(self, degree: int, row: Face, col: Face) -> None:
        col_entries = self.by_col[degree].get(col)
        if col_entries and row in col_entries:
            del col_entries[row]
            if not col_entries:
                del self.by_col[degree][col]
            row_entries = self.by_row[degree][row]
            del row_entries[col]
            if not row_entries:
                del self.by_row[degree][row]

    def delete_face(self, degree: int, face: Face) -> None:
        self.modules[degree].remove(face)
        if degree >= 1:
            for row in list(self.by_col[degree].get(face, {})):
                self.delete(degree, row, face)
        if degree + 1 <= self.top:
            for col in list(self.by_row[degree + 1].get(face, {})):
                self.delete(degree + 1, face, col)

    def change_of_basis(self, degree: int, row_face: Face, col_face: Face) -> None:
        pivot = self.get(degree, row_face, col_face)
        if pivot is None:
            raise IdealError(
                f"no entry at row {row_face.members}, column {col_face.members}"
                f" of the degree-{degree} differential"
            )
        if not pivot.is_invertible:
            raise IdealError(
                f"pivot at row {row_face.members}, column {col_face.members}"
                " is not invertible"
            )
        old_row = dict(self.by_row[degree].get(row_face, {}))
        old_col = dict(self.by_col[degree].get(col_face, {}))

        # Fill-in over the outer product of the pivot row and pivot column.
        for d_face, a_rd in old_row.items():
            if d_face == col_face:
                continue
            for c_face, a_cs in old_col.items():
                if c_face == row_face:
                    continue
                current = self.get(degree, c_face, d_face)
                scalar = (Fraction(0) if current is None else current.scalar) - (
                    a_rd.scalar * a_cs.scalar / pivot.scalar
                )
                if scalar == 0:
                    if current is not None:
                        self.delete(degree, c_face, d_face)
                else:
                    self.set(
                        degree,
                        c_face,
                        d_face,
                        Entry(scalar, d_face.mdeg.exact_div(c_face.mdeg)),
                    )

        # Pivot row and column become unit vectors meeting at the pivot.
        for d_face in old_row:
            if d_face != col_face:
                self.delete(degree, row_face, d_face)
        for c_face in old_col:
            if c_face != row_face:
                self.delete(degree, c_face, col_face)
        unit = row_face.mdeg.vars.unit()
        self.set(degree, row_face, col_face, Entry(Fraction(1), unit))

        # The adjacent differentials lose the pair's row and column.
        if degree + 1 <= self.top:
            for col in list(self.by_row[degree + 1].get(col_face, {})):
                self.delete(degree + 1, col_face, col)
        if degree - 1 >= 1:
            for row in list(self.by_col[degree - 1].get(row_face, {})):
                self.delete(degree - 1, row, row_face)

    def cancel(
        self, degree: int, row_face: Face, col_face: Face, strategy_tag: str
    ) -> None:
        pivot = self.get(degree, row_face, col_face)
        if pivot is None or not pivot.is_invertible:
            raise IdealError(
                f"cannot cancel row {row_face.members}, column {col_face.members}:"
                " no invertible entry there"
            )
        pivot_scalar = pivot.scalar
        self.change_of_basis(degree, row_face, col_face)
        self.delete_face(degree, col_face)
        self.delete_face(degree - 1, row_face)
        self.trail.append(
            CancellationEvent(col_face, row_face, pivot_scalar, strategy_tag)
        )

    def invertible_positions(self) -> list[tuple[int, Face, Face]]:
        found = []
        for degree in range(1, self.top + 1):
            for col, col_entries in self.by_col[degree].items():
                for row, entry in col_entries.items():
                    if entry.is_invertible:
                        found.append((degree, row, col))
        found.sort(key=lambda t: (t[0], t[2].members, t[1].members))
        return found

    def facet_candidates(self) -> list[tuple[int, Face, Face]]:
        return [
            (degree, row, col)
            for degree, row, col in self.invertible_positions()
            if row.is_facet_of(col)
        ]

    def repeated_classes(self) -> dict[Monomial, list[Face]]:
        by_mdeg: dict[Monomial, list[Face]] = {}
        for module in self.modules:
            for face in module:
                by_mdeg.setdefault(face.mdeg, []).append(face)
        return {m: fs for m, fs in by_mdeg.items() if len(fs) >= 2}


def find_invertible_entries(res: Resolution) -> list[tuple[int, Face, Face]]:
    """All invertible positions, ordered by (degree, column, row)."""
    found = []
    for degree in range(1, res.top + 1):
        matrix = res.diffs[degree]
        assert matrix is not None
        for (ri, ci), entry in matrix.entries.items():
            if entry.is_invertible:
                found.append((degree, matrix.rows[ri], matrix.cols[ci]))
    found.sort(key=lambda t: (t[0], t[2].members, t[1].members))
    return found


def standard_change_of_basis(
    res: Resolution, degree: int, row_face: Face, col_face: Face
) -> Resolution:
    """Apply the pivot change of basis and return the rewritten resolution."""
    work = _Work(res)
    work.change_of_basis(degree, row_face, col_face)
    return work.freeze()


def standard_cancellation(
    res: Resolution,
    degree: int,
    row_face: Face,
    col_face: Face,
    strategy_tag: str = "manual",
) -> Resolution:
    """Change basis around the pivot, then delete the face/row pair."""
    work = _Work(res)
    work.cancel(degree, row_face, col_face, strategy_tag)
    return work.freeze()


def eliminate_face_facet_pairs(
    res: Resolution, strategy: Strategy = Deterministic()
) -> EliminationOutcome:
    """Repeatedly cancel invertible face/facet pairs, as the strategy directs."""
    work = _Work(res)
    if isinstance(strategy, Scripted):
        for sigma_members, tau_members in strategy.pairs:
            degree = len(sigma_members)
            sigma = _find_current_face(work, sigma_members)
            tau = _find_current_face(work, tau_members)
            problem = None
            if sigma is None or tau is None:
                problem = "face not present"
            elif not tau.is_facet_of(sigma):
                problem = "not face and facet"
            else:
                entry = work.get(degree, tau, sigma)
                if entry is None or not entry.is_invertible:
                    problem = "no invertible entry there"
            if problem is not None:
                raise IdealError(
                    f"scripted pair ({list(sigma_members)}, {list(tau_members)})"
                    f" is not cancellable: {problem}"
                )
            work.cancel(degree, tau, sigma, "scripted")
    elif isinstance(strategy, SeededRandom):
        rng = random.Random(strategy.seed)
        tag = f"random:{strategy.seed}"
        while True:
            candidates = work.facet_candidates()
            if not candidates:
                break
            degree, row, col = candidates[rng.randrange(len(candidates))]
            work.cancel(degree, row, col, tag)
    else:
        while True:
            candidates = work.facet_candidates()
            if not candidates:
                break
            degree, row, col = candidates[0]
            work.cancel(degree, row, col, "deterministic")

    repeated = work.repeated_classes()
    if repeated and not work.facet_candidates():
        witness_mdeg = min(repeated, key=lambda m: m.exponents)
        witness = sorted(repeated[witness_mdeg], key=Face.sort_key)
        return EliminationOutcome(work.freeze(), "stuck", witness)
    return EliminationOutcome(work.freeze(), "completed", None)


def _find_current_face(work: _Work, members: tuple[int, ...]) -> Face | None:
    degree = len(members)
    if degree > work.top:
        return None
    for face in work.modules[degree]:
        if face.members == members:
            return face
    return None


def minimize_generic(res: Resolution) -> Resolution:
    """Cancel invertible entries (facet-related or not) until none remain.

    Each step removes one rank from two consecutive degrees, so the loop
    terminates; the result has no invertible entries and is therefore a
    minimal resolution. The surviving (degree, multidegree) multiset is
    the multigraded Betti data.
    """
    work = _Work(res)
    while True:
        positions = work.invertible_positions()
        if not positions:
            break
        degree, row, col = positions[0]
        work.cancel(degree, row, col, "generic")
    return work.freeze()


def semidominant_pair_set_A(ideal: MonomialIdeal) -> list[tuple[Face, Face]]:
    """The full family of cancellable face/facet pairs of a semidominant ideal.

    Pairs a subset of the dominant generators with the same subset plus
    the nondominant generator n, whenever n divides the subset's lcm.
    The pairs are pairwise disjoint and exhaust every face/facet pair of
    equal multidegree in the Taylor complex, so cancelling all of them
    (in any order) yields the minimal resolution.
    """
    report = classify(ideal)
    if report.p != 1:
        raise IdealError("pair set is defined for semidominant ideals only")
    (n_index,) = report.nondominant_indices
    n = ideal.generators[n_index]
    dominant_indices = [i for i in range(len(ideal)) if i != n_index]
    pairs = []
    for size in range(1, len(dominant_indices) + 1):
        for combo in combinations(dominant_indices, size):
            sub_lcm = lcm([ideal.generators[i] for i in combo])
            if n.divides(sub_lcm):
                tau = Face(combo, sub_lcm)
                sigma = Face(tuple(sorted(combo + (n_index,))), sub_lcm)
                pairs.append((sigma, tau))
    return pairs


@dataclass(frozen=True)
class Theorem71Report:
    """Whether arbitrary-order face/facet elimination is provably safe.

    holds is False when some facet tau, shared by two faces of the same
    multidegree m as tau itself, has a sibling facet (of either face)
    that also carries m; each such triple (tau, sigma, other facet) is a
    violation witness.
    """

    holds: bool
    violations: tuple[tuple[Face, Face, Face], ...]


def check_theorem71_hypothesis(ideal: MonomialIdeal) -> Theorem71Report:
    _check_cap(ideal)
    q = len(ideal)
    mdegs = _mdeg_by_mask(ideal)
    by_mdeg: dict[Monomial, list[int]] = {}
    for mask in range(1 << q):
        by_mdeg.setdefault(mdegs[mask], []).append(mask)

    violations: set[tuple[Face, Face, Face]] = set()
    for mdeg, masks in sorted(by_mdeg.items(), key=lambda kv: kv[0].exponents):
        if len(masks) < 3:
            continue
        mask_set = set(masks)
        for tau_mask in masks:
            size = bin(tau_mask).count("1")
            supersets = [
                m
                for m in masks
                if bin(m).count("1") == size + 1 and (m & tau_mask) == tau_mask
            ]
            if len(supersets) < 2:
                continue
            for sigma1_mask, sigma2_mask in combinations(supersets, 2):
                for sigma_mask in (sigma1_mask, sigma2_mask):
                    for bit in _bits(sigma_mask):
                        other_facet = sigma_mask & ~(1 << bit)
                        if other_facet != tau_mask and other_facet in mask_set:
                            violations.add(
                                (
                                    _face_from_mask(tau_mask, mdegs),
                                    _face_from_mask(sigma_mask, mdegs),
                                    _face_from_mask(other_facet, mdegs),
                                )
                            )
    ordered = tuple(
        sorted(violations, key=lambda t: tuple(f.sort_key() for f in t))
    )
    return Theorem71Report(not ordered, ordered)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _face_from_mask(mask: int, mdegs: Sequence[Monomial]) -> Face:
    return Face(tuple(_bits(mask)), mdegs[mask])
