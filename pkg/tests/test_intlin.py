"""Tests for the exact integer/rational linear algebra kernel."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invpoly.errors import (
    BadShapeError,
    NonSquareError,
    SingularMatrixError,
    ZeroVectorError,
)
from invpoly.intlin import (
    cokernel_structure,
    det_exact,
    inverse_rational,
    mat_mul,
    mat_vec,
    maximal_minor_vector,
    primitive_kernel,
    rank_exact,
    smith_normal_form,
)


def det_permutation_expansion(m):
    """Independent determinant: sum over permutations."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        term = (-1) ** inversions
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def rank_fraction_elimination(m):
    """Independent rank: plain Gaussian elimination over Fraction."""
    work = [[Fraction(x) for x in row] for row in m]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(rank + 1, nrows):
            factor = work[i][col] / work[rank][col]
            work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


square_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-6, 6), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)

rect_matrices = st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(
    lambda shape: st.lists(
        st.lists(st.integers(-6, 6), min_size=shape[1], max_size=shape[1]),
        min_size=shape[0],
        max_size=shape[0],
    )
)


class TestDet:
    def test_known_values(self):
        assert det_exact([[2, 1], [1, 2]]) == 3
        assert det_exact([[3, 1], [0, 2]]) == 6
        assert det_exact([[5]]) == 5
        assert det_exact([]) == 1
        assert det_exact([[2, 1, 0], [0, 3, 1], [1, 0, 4]]) == 25

    def test_singular(self):
        assert det_exact([[1, 2], [2, 4]]) == 0
        assert det_exact([[0, 0], [0, 0]]) == 0

    def test_non_square_rejected(self):
        with pytest.raises(NonSquareError):
            det_exact([[1, 2, 3], [4, 5, 6]])

    @given(square_matrices)
    def test_matches_permutation_expansion(self, m):
        assert det_exact(m) == det_permutation_expansion(m)

    @given(square_matrices, square_matrices)
    def test_multiplicative(self, a, b):
        if len(a) != len(b):
            a = a[: len(b)]
            b = b[: len(a)]
            a = [row[: len(a)] for row in a]
            b = [row[: len(b)] for row in b]
        if not a:
            return
        assert det_exact(mat_mul(a, b)) == det_exact(a) * det_exact(b)


class TestRank:
    def test_known_values(self):
        assert rank_exact([[1, 2], [2, 4]]) == 1
        assert rank_exact([[2, 1], [1, 2]]) == 2
        assert rank_exact([[0, 0], [0, 0]]) == 0
        assert rank_exact([]) == 0

    @given(rect_matrices)
    def test_matches_fraction_elimination(self, m):
        assert rank_exact(m) == rank_fraction_elimination(m)


class TestMinorVector:
    def test_known_values(self):
        assert maximal_minor_vector([[2, 1, 0], [1, 2, 2]]) == (2, -4, 3)
        assert maximal_minor_vector([[2, 1, 0], [0, 2, 2]]) == (2, -4, 4)
        assert maximal_minor_vector([[5, 1]]) == (-1, 5)
        assert maximal_minor_vector([[2, 1, 0], [1, 3, 2]]) == (2, -4, 5)
        assert maximal_minor_vector([[2, 1, 0], [0, 2, 4]]) == (4, -8, 4)

    def test_bad_shape_rejected(self):
        with pytest.raises(BadShapeError):
            maximal_minor_vector([[1, 2], [3, 4]])
        with pytest.raises(BadShapeError):
            maximal_minor_vector([[1, 2, 3, 4], [5, 6, 7, 8]])

    @given(
        st.integers(1, 4).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1),
                min_size=n,
                max_size=n,
            )
        )
    )
    def test_lies_in_kernel(self, m):
        d = maximal_minor_vector(m)
        assert all(x == 0 for x in mat_vec(m, d))


class TestPrimitiveKernel:
    def test_known_values(self):
        assert primitive_kernel((2, -4, 4)) == (1, -2, 2)
        assert primitive_kernel((2, -4, 3)) == (2, -4, 3)
        assert primitive_kernel((-1, 5)) == (-1, 5)
        assert primitive_kernel((3, -3)) == (-1, 1)

    def test_sign_flip(self):
        assert primitive_kernel((2, -4)) == (-1, 2)
        assert primitive_kernel((-6, 0)) == (1, 0)

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVectorError):
            primitive_kernel((0, 0, 0))

    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=6))
    def test_primitive_and_parallel(self, v):
        if all(x == 0 for x in v):
            with pytest.raises(ZeroVectorError):
                primitive_kernel(v)
            return
        c = primitive_kernel(v)
        assert math.gcd(*(abs(x) for x in c)) == 1
        last = next(x for x in reversed(c) if x != 0)
        assert last > 0
        # parallel: cross ratios agree
        g = math.gcd(*(abs(x) for x in v))
        scaled = tuple(x // g for x in v)
        assert c == scaled or c == tuple(-x for x in scaled)


class TestSmithNormalForm:
    def test_known_diagonals(self):
        assert smith_normal_form([[2, 0], [0, 3]]).diag == (1, 6)
        assert smith_normal_form([[2, 1], [1, 2]]).diag == (1, 3)
        assert smith_normal_form([[2, 4], [4, 8]]).diag == (2, 0)
        assert smith_normal_form([[0, 0], [0, 0]]).diag == (0, 0)

    def test_transforms_multiply_back(self):
        m = [[6, 4], [2, 8]]
        res = smith_normal_form(m)
        product = mat_mul(mat_mul(res.left, m), res.right)
        assert product == [[res.diag[0], 0], [0, res.diag[1]]]

    @given(rect_matrices)
    @settings(max_examples=60)
    def test_properties(self, m):
        res = smith_normal_form(m)
        nrows, ncols = len(m), len(m[0])
        assert len(res.diag) == min(nrows, ncols)
        assert all(s >= 0 for s in res.diag)
        nonzero = [s for s in res.diag if s != 0]
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        assert abs(det_exact(res.left)) == 1
        assert abs(det_exact(res.right)) == 1
        product = mat_mul(mat_mul(res.left, m), res.right)
        for i in range(nrows):
            for j in range(ncols):
                expected = res.diag[i] if i == j and i < len(res.diag) else 0
                assert product[i][j] == expected

    @given(rect_matrices)
    @settings(max_examples=40)
    def test_determinantal_divisors(self, m):
        # product of the first k elementary divisors is the gcd of all
        # k-by-k minors
        res = smith_normal_form(m)
        nrows, ncols = len(m), len(m[0])
        for k in range(1, min(nrows, ncols, 3) + 1):
            minors = [
                abs(det_exact([[m[i][j] for j in cols] for i in rows]))
                for rows in itertools.combinations(range(nrows), k)
                for cols in itertools.combinations(range(ncols), k)
            ]
            assert math.prod(res.diag[:k]) == math.gcd(*minors)


class TestCokernel:
    def test_known_values(self):
        res = cokernel_structure([[2, 0], [0, 2], [-1, -1]])
        assert res.free_rank == 1
        assert res.torsion_orders == (2,)
        assert res.torsion_order_total == 2

        res = cokernel_structure([[5]])
        assert res.free_rank == 0
        assert res.torsion_orders == (5,)

        res = cokernel_structure([[1]])
        assert (res.free_rank, res.torsion_orders) == (0, ())

    def test_zero_map(self):
        res = cokernel_structure([[0, 0], [0, 0]])
        assert res.free_rank == 2
        assert res.torsion_orders == ()


class TestInverse:
    def test_known_value(self):
        inv = inverse_rational([[2, 1], [1, 2]])
        third = Fraction(1, 3)
        assert inv == (
            (2 * third, -third),
            (-third, 2 * third),
        )

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            inverse_rational([[1, 2], [2, 4]])

    def test_non_square_rejected(self):
        with pytest.raises(NonSquareError):
            inverse_rational([[1, 2, 3], [4, 5, 6]])

    @given(square_matrices)
    def test_round_trip(self, m):
        if det_exact(m) == 0:
            with pytest.raises(SingularMatrixError):
                inverse_rational(m)
            return
        inv = inverse_rational(m)
        n = len(m)
        for i in range(n):
            for j in range(n):
                acc = sum(Fraction(m[i][k]) * inv[k][j] for k in range(n))
                assert acc == (1 if i == j else 0)
