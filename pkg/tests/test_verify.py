import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from conftest import I, ideals
from monores.cancellation import minimize_generic, standard_cancellation
from monores.taylor import DifferentialMatrix, Entry, build_taylor
from monores.verify import (
    betti_oracle,
    compose_check,
    matrix_rank_exact,
    minimality_check,
    strand_exactness,
    strands_all_exact,
)


def fraction_rank_reference(rows):
    """Plain Gaussian elimination over Fractions, for cross-validation."""
    matrix = [[Fraction(x) for x in row] for row in rows]
    if not matrix or not matrix[0]:
        return 0
    m, n = len(matrix), len(matrix[0])
    rank = 0
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        for i in range(r + 1, m):
            factor = matrix[i][c] / matrix[r][c]
            for j in range(c, n):
                matrix[i][j] -= factor * matrix[r][j]
        r += 1
        rank += 1
    return rank


def flip_one_sign(res):
    mutant = res.copy()
    matrix = mutant.diffs[2]
    key = min(matrix.entries)
    entry = matrix.entries[key]
    matrix.entries[key] = Entry(-entry.scalar, entry.monomial)
    return mutant


def delete_top_face(res):
    """Remove the top face outright (not via cancellation)."""
    mutant = res.copy()
    top = mutant.top
    mutant.modules[top] = []
    mutant.diffs[top] = DifferentialMatrix(list(mutant.modules[top - 1]), [], {})
    return mutant


# --- exact rank ---------------------------------------------------------------


def test_rank_known_values():
    assert matrix_rank_exact([[1, 1, 1]]) == 1
    assert matrix_rank_exact([[0, -1, -1], [-1, 0, 1], [1, 1, 0]]) == 2
    assert matrix_rank_exact([[Fraction(1, 2), 1], [1, 2]]) == 1
    assert matrix_rank_exact([[0, 0], [0, 0]]) == 0
    assert matrix_rank_exact([]) == 0
    assert matrix_rank_exact([[2, 0], [0, 3]]) == 2


@given(
    st.lists(
        st.lists(st.integers(-4, 4), min_size=1, max_size=5),
        min_size=1,
        max_size=5,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_rank_matches_reference_elimination(rows):
    assert matrix_rank_exact(rows) == fraction_rank_reference(rows)


@given(st.integers(0, 10**6))
def test_rank_matches_reference_on_fractions(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 5)
    n = rng.randint(1, 5)
    rows = [
        [
            Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(n)
        ]
        for _ in range(m)
    ]
    assert matrix_rank_exact(rows) == fraction_rank_reference(rows)


# --- compose_check ---------------------------------------------------------------


@settings(max_examples=30)
@given(ideals(max_gens=5))
def test_taylor_is_a_complex(ideal):
    assert compose_check(build_taylor(ideal))


def test_compose_after_single_cancellation():
    res = build_taylor(I("x^2, x*y, y^3"))
    out = standard_cancellation(res, 3, res.find_face((0, 2)), res.find_face((0, 1, 2)))
    assert compose_check(out)


def test_compose_fails_on_sign_flip():
    res = build_taylor(I("x^2, x*y, y^3"))
    assert not compose_check(flip_one_sign(res))


# --- strand exactness -------------------------------------------------------------


def test_strand_golden_values():
    M = I("x^2, x*y, y^3")
    reports = strand_exactness(build_taylor(M), M)
    # lattice minus unit: xy, y^3, x^2, x^2y, xy^3, x^2y^3
    assert len(reports) == 6
    by_mdeg = {str(r.multidegree): r for r in reports}
    full = by_mdeg["x^2*y^3"]
    assert full.dims == (1, 3, 3, 1)
    assert full.ranks == (0, 1, 2, 1)
    assert full.exact and full.failure_degree is None
    assert strands_all_exact(reports)


def test_strand_exactness_on_minimized_corpus(rng):
    for _ in range(10):
        M = random_minimal(rng)
        minimal = minimize_generic(build_taylor(M))
        assert strands_all_exact(strand_exactness(minimal, M))


def random_minimal(rng):
    from monores.cli import random_ideal

    return random_ideal(rng, rng.randint(2, 4), rng.randint(1, 5), 3)


def test_strand_fails_on_arbitrary_deletion():
    M = I("x^2, x*y, y^3")
    mutant = delete_top_face(build_taylor(M))
    assert compose_check(mutant)  # still a complex, no longer exact
    reports = strand_exactness(mutant, M)
    assert not strands_all_exact(reports)
    bad = [r for r in reports if not r.exact]
    assert any(str(r.multidegree) == "x^2*y^3" and r.failure_degree == 2 for r in bad)


def test_exhaustive_strand_mode_agrees_on_tiny_ideals(rng):
    for _ in range(5):
        M = random_minimal_tiny(rng)
        res = build_taylor(M)
        assert strands_all_exact(strand_exactness(res, M))
        exhaustive = strand_exactness(res, M, exhaustive=True)
        assert strands_all_exact(exhaustive)
        lattice_count = len(strand_exactness(res, M))
        assert len(exhaustive) >= lattice_count


def random_minimal_tiny(rng):
    from monores.cli import random_ideal

    return random_ideal(rng, rng.randint(2, 3), rng.randint(1, 4), 3)


def test_exhaustive_mode_covers_the_unit_degree():
    M = I("x^2, y^2")
    reports = strand_exactness(build_taylor(M), M, exhaustive=True)
    unit = next(r for r in reports if r.multidegree.is_unit)
    assert unit.dims == (1, 0, 0)
    assert unit.ranks == (1, 0, 0)  # the quotient is nonzero at degree 1
    assert unit.exact


# --- minimality --------------------------------------------------------------------


def test_minimality_examples():
    assert minimality_check(build_taylor(I("x^2, x*z, y^3")))
    assert not minimality_check(build_taylor(I("x^2, x*y, y^3")))
    assert minimality_check(minimize_generic(build_taylor(I("x^2, x*y, y^3"))))


# --- betti oracle --------------------------------------------------------------------


def test_betti_oracle_examples():
    assert betti_oracle(I("x^3y, y^2z, xz^2, xyz")) == (1, 4, 3)
    assert betti_oracle(I("x^2, x*z, y^3")) == (1, 3, 3, 1)
    assert betti_oracle(I("xy, xz, yz")) == (1, 3, 2)


@settings(max_examples=20, deadline=None)
@given(ideals(max_gens=4))
def test_betti_oracle_invariant_under_permutation(ideal):
    gens = list(ideal.generators)
    reference = betti_oracle(ideal)
    rng = random.Random(sum(map(hash, gens)) & 0xFFFF)
    rng.shuffle(gens)
    from monores.monomials import MonomialIdeal

    assert betti_oracle(MonomialIdeal(ideal.vars, tuple(gens))) == reference


@settings(max_examples=25, deadline=None)
@given(ideals(max_gens=5))
def test_alternating_sum_of_betti_is_zero(ideal):
    betti = betti_oracle(ideal)
    assert sum((-1) ** i * b for i, b in enumerate(betti)) == 0
