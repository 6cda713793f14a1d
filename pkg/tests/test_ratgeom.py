"""Exact scalar/vector/matrix layer."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kalai3d.ratgeom import (
    QMatrix,
    QVector,
    affine_rank,
    dot,
    format_rational,
    kernel_basis,
    parse_rational,
    rational,
    solve_linear,
)


def qv(*coords):
    return QVector(coords)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60).map(
    lambda f: rational(f.numerator, f.denominator)
)


class TestScalar:
    def test_lowest_terms(self):
        assert rational(2, 4) == rational(1, 2)
        assert format_rational(rational(2, 4)) == "1/2"
        assert format_rational(rational(-2, 4)) == "-1/2"
        assert format_rational(rational(2, -4)) == "-1/2"
        assert format_rational(rational(6, 3)) == "2"
        assert format_rational(rational(0, 7)) == "0"

    @pytest.mark.parametrize(
        "text,num,den",
        [("3", 3, 1), ("-7/3", -7, 3), ("0", 0, 1), ("10/4", 5, 2), ("+2", 2, 1)],
    )
    def test_parse(self, text, num, den):
        assert parse_rational(text) == rational(num, den)

    @pytest.mark.parametrize(
        "bad", ["1.5", "1/0", "1/-2", "1 /2", " 1", "", "a", "1/2/3", "0x3"]
    )
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    @given(rationals)
    def test_roundtrip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestVector:
    def test_dot(self):
        assert dot(qv(1, 0), qv(0, 1)) == 0
        assert dot(qv(rational(1, 2), rational(1, 3)), qv(2, 3)) == 2
        for i in range(3):
            e = QVector.unit(3, i)
            assert dot(e, e) == 1

    def test_dot_mismatch(self):
        with pytest.raises(ValueError):
            dot(qv(1, 0), qv(1, 0, 0))

    def test_arithmetic_exact(self):
        third = rational(1, 3)
        v = qv(third, third, third)
        assert v + v + v == qv(1, 1, 1)
        assert (v - v).is_zero()
        assert 3 * v == qv(1, 1, 1)
        assert -v == qv(-third, -third, -third)

    def test_ordering_and_hash(self):
        a, b = qv(0, 1), qv(1, 0)
        assert a < b
        assert len({a, b, qv(0, 1)}) == 2

    @given(st.lists(rationals, min_size=1, max_size=5), rationals)
    def test_scalar_distributes(self, coords, s):
        v = QVector(coords)
        assert s * (v + v) == s * v + s * v


class TestAffineRank:
    def test_small_cases(self):
        assert affine_rank([qv(0, 0)]) == 0
        assert affine_rank([qv(0, 0), qv(0, 0)]) == 0
        assert affine_rank([qv(0, 0), qv(1, 1)]) == 1
        assert affine_rank([qv(0, 0), qv(1, 0), qv(0, 1)]) == 2

    def test_cube_vertices(self):
        from itertools import product

        verts = [QVector(p) for p in product((-1, 1), repeat=3)]
        assert affine_rank(verts) == 3

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            affine_rank([])

    @given(
        st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=6),
        st.lists(rationals, min_size=3, max_size=3),
        st.randoms(),
    )
    def test_invariant_under_translation_and_order(self, rows, shift, rng):
        pts = [QVector(r) for r in rows]
        base = affine_rank(pts)
        t = QVector(shift)
        shuffled = list(pts)
        rng.shuffle(shuffled)
        assert affine_rank([p + t for p in shuffled]) == base


class TestSolve:
    def test_identity(self):
        a = QMatrix([qv(1, 0), qv(0, 1)])
        x = solve_linear(a, qv(3, rational(1, 2)))
        assert x == qv(3, rational(1, 2))

    def test_inconsistent(self):
        a = QMatrix([qv(1, 1), qv(2, 2)])
        assert solve_linear(a, qv(1, 3)) is None

    def test_underdetermined_still_solves(self):
        a = QMatrix([qv(1, 1)])
        x = solve_linear(a, qv(5))
        assert x is not None
        assert dot(qv(1, 1), x) == 5

    def test_square_cube_corner(self):
        a = QMatrix([qv(1, 0, 0), qv(0, 1, 0), qv(0, 0, 1)])
        assert solve_linear(a, qv(1, 1, 1)) == qv(1, 1, 1)

    @given(
        st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=4),
        st.lists(rationals, min_size=3, max_size=3),
    )
    def test_solution_satisfies_system(self, rows, xin):
        a = QMatrix(rows)
        xtrue = QVector(xin)
        b = QVector([dot(r, xtrue) for r in a.rows])
        x = solve_linear(a, b)
        assert x is not None  # consistent by construction
        for row, rhs in zip(a.rows, b):
            assert dot(row, x) == rhs


class TestKernel:
    def test_trivial(self):
        assert kernel_basis(QMatrix([qv(1, 0), qv(0, 1)])) == []

    def test_line(self):
        (k,) = kernel_basis(QMatrix([qv(1, 1)]))
        assert dot(qv(1, 1), k) == 0
        assert not k.is_zero()

    @given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=3))
    def test_members_annihilate(self, rows):
        a = QMatrix(rows)
        basis = kernel_basis(a)
        assert len(basis) + a.rank() == a.ncols
        for k in basis:
            for row in a.rows:
                assert dot(row, k) == 0
