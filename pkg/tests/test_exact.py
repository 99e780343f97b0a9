import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sixj.errors import DomainError, EmptySubspace, TriangleViolation, ValidationError
from sixj.exact import (ExactRational, SixJArguments, as_spin, eigen_6j_oracle, intermediate_bounds,
                        j23sq_diagonal, j23sq_operator, sixj_exact, sixj_exact_rational, triangle_satisfied,
                        wigner_d, wigner_d_exact, wigner_d_matrix)

# reference values computed independently with sympy.physics.wigner (20 digits)
SYMPY_6J = [
    ((1, 1, 1, 1, 1, 1), 0.16666666666666666667),
    ((2, 3, 4, 0, 4, 3), -0.12598815766974240907),
    ((2, 3, 5, 4, 5, 6), 0.011671649795752170440),
    ((F(1, 2), F(1, 2), 1, F(1, 2), F(1, 2), 1), 0.16666666666666666667),
    ((F(3, 2), 2, F(5, 2), 3, F(7, 2), 2), -0.11736911946539273860),
    ((8, 9, 10, 11, 12, 13), 0.0055881924943179085245),
    ((20, 30, 40, 50, 50, 60), 0.0029812817853472566211),
]

# d^j_{m m'}(1.1) from sympy.physics.quantum.spin.Rotation.d
SYMPY_D = [
    ((1, 1, 0), -0.63017876774280203222),
    ((F(1, 2), F(1, 2), F(-1, 2)), -0.52268722893065916779),
    ((2, 1, -1), 0.52104861934046154815),
    ((F(7, 2), F(3, 2), F(-5, 2)), 0.34029391689323600460),
    ((5, 2, 3), -0.39117721364458126583),
]


def random_args(rng, jmax=15):
    while True:
        j1, j2, j3, j4 = (F(int(x), 2) for x in rng.integers(0, 2 * jmax + 1, size=4))
        try:
            b = intermediate_bounds(j1, j2, j3, j4)
        except EmptySubspace:
            continue
        if b.j23_max > jmax or b.j12_max > jmax:
            continue
        k12, k23 = rng.integers(0, b.D, size=2)
        return SixJArguments(j1, j2, j3, j4, b.j12_min + int(k12), b.j23_min + int(k23))


class TestSpins:
    def test_parse_forms(self):
        assert as_spin("7/2") == as_spin(3.5) == F(7, 2)

    @pytest.mark.parametrize("bad", [-1, "1/3", 0.25, "x"])
    def test_rejects(self, bad):
        with pytest.raises(ValidationError):
            as_spin(bad)

    def test_triangle(self):
        assert triangle_satisfied(1, 1, 2)
        assert not triangle_satisfied(1, 1, 3)
        assert not triangle_satisfied(F(1, 2), 1, 1)  # non-integer perimeter

    def test_bounds(self):
        b = intermediate_bounds(2, 3, 4, 5)
        assert (b.j12_min, b.j12_max, b.j23_min, b.j23_max, b.D) == (1, 5, 3, 7, 5)
        assert b.j == 2

    def test_empty_subspace(self):
        with pytest.raises(EmptySubspace):
            intermediate_bounds(F(1, 2), 1, 1, 1)

    def test_violation_names_triad(self):
        with pytest.raises(TriangleViolation, match=r"\(j1,j2,j12\)"):
            SixJArguments(2, 3, 4, 5, 9, 5)


class TestRacah:
    @pytest.mark.parametrize("sym,ref", SYMPY_6J)
    def test_against_sympy(self, sym, ref):
        assert sixj_exact(SixJArguments.from_symbol(*sym)) == pytest.approx(ref, rel=1e-14, abs=1e-17)

    def test_exact_form(self):
        r = sixj_exact_rational(SixJArguments.from_symbol(2, 3, 5, 4, 5, 6))
        assert r == ExactRational(F(1, 2002), 546)

    def test_zero_spin_closed_form(self):
        # {a b c; 0 c b} = (-1)^(a+b+c) / sqrt((2b+1)(2c+1))
        for a, b, c in [(1, 2, 2), (2, 3, 4), (F(5, 2), F(3, 2), 2)]:
            val = sixj_exact(SixJArguments.from_symbol(a, b, c, 0, c, b))
            ref = (-1) ** int(a + b + c) / math.sqrt((2 * b + 1) * (2 * c + 1))
            assert val == pytest.approx(ref, rel=1e-14)

    def test_tetrahedral_symmetries(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            a = random_args(rng, 8)
            s = a.symbol()  # (a b c; d e f)
            v = sixj_exact(a)
            perms = [
                (s[1], s[0], s[2], s[4], s[3], s[5]),  # swap columns
                (s[0], s[2], s[1], s[3], s[5], s[4]),
                (s[3], s[4], s[2], s[0], s[1], s[5]),  # swap upper/lower in two columns
            ]
            for p in perms:
                assert sixj_exact(SixJArguments.from_symbol(*p)) == pytest.approx(v, abs=1e-15)

    def test_orthogonality(self):
        b = intermediate_bounds(3, 4, 5, 6)
        for j12a in range(int(b.j12_min), int(b.j12_max) + 1):
            for j12b in range(int(b.j12_min), int(b.j12_max) + 1):
                tot = sum((2 * j12a + 1) * (2 * j23 + 1)
                          * sixj_exact(SixJArguments(3, 4, 5, 6, j12a, j23))
                          * sixj_exact(SixJArguments(3, 4, 5, 6, j12b, j23))
                          for j23 in range(int(b.j23_min), int(b.j23_max) + 1))
                assert tot == pytest.approx(1.0 if j12a == j12b else 0.0, abs=1e-13)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_scale_free_bound(self, seed):
        a = random_args(np.random.default_rng(seed), 10)
        # |6j| <= 1 / sqrt((2 j12 + 1)(2 j23 + 1)) from unitarity
        assert abs(sixj_exact(a)) <= 1.0 / math.sqrt((2 * a.j12 + 1) * (2 * a.j23 + 1)) + 1e-15


class TestEigenOracle:
    def test_spectrum(self):
        dec = eigen_6j_oracle(2, 3, 4, 5)
        expect = np.array([j * (j + 1) for j in range(3, 8)], dtype=float)
        assert np.allclose(dec.eigenvalues, expect, rtol=1e-9, atol=0)
        assert np.all(np.diff(dec.eigenvalues) > 0)

    def test_orthonormal(self):
        z = eigen_6j_oracle(7, 8, F(19, 2), F(17, 2)).eigenvectors
        assert np.max(np.abs(z.T @ z - np.eye(z.shape[0]))) < 1e-12

    def test_components_match_racah(self):
        j1, j2, j3, j4 = 4, F(9, 2), F(11, 2), 5
        dec = eigen_6j_oracle(j1, j2, j3, j4)
        b = intermediate_bounds(j1, j2, j3, j4)
        for i in range(b.D):
            for k in range(b.D):
                j12, j23 = b.j12_min + i, b.j23_min + k
                ref = math.sqrt((2 * j12 + 1) * (2 * j23 + 1)) * sixj_exact(SixJArguments(j1, j2, j3, j4, j12, j23))
                assert dec.eigenvectors[i, k] == pytest.approx(ref, abs=1e-12)

    def test_j12_zero_row_uses_limit(self):
        assert j23sq_operator(3, 2, 2, 3).limit_rows == ()
        op = j23sq_operator(2, 2, 3, 3)
        assert op.j12_min == 0 and op.limit_rows == (0,)
        # coupled to zero, <J2.J3> vanishes and <J23^2> = j2(j2+1) + j3(j3+1)
        assert j23sq_diagonal(F(2), F(2), F(3), F(3), F(0)) == 6 + 12
        dec = eigen_6j_oracle(2, 2, 3, 3)
        for k in range(5):
            ref = math.sqrt(2 * (1 + k) + 1) * sixj_exact(SixJArguments(2, 2, 3, 3, 0, 1 + k))
            assert dec.eigenvectors[0, k] == pytest.approx(ref, abs=1e-12)

    def test_one_dimensional(self):
        dec = eigen_6j_oracle(0, 0, 3, 3)
        assert dec.eigenvectors.shape == (1, 1)
        assert abs(dec.eigenvectors[0, 0]) == pytest.approx(1.0)


class TestWignerD:
    @pytest.mark.parametrize("jmm,ref", SYMPY_D)
    def test_against_sympy(self, jmm, ref):
        assert wigner_d(*jmm, 1.1) == pytest.approx(ref, abs=1e-14)

    def test_spin_half(self):
        b = 0.7
        assert wigner_d(F(1, 2), F(1, 2), F(1, 2), b) == pytest.approx(math.cos(b / 2))
        assert wigner_d(F(1, 2), F(1, 2), F(-1, 2), b) == pytest.approx(-math.sin(b / 2))

    def test_exact_pythagorean_angle(self):
        # cos(beta/2) = 3/5, sin(beta/2) = 4/5
        beta = 2 * math.atan2(4, 3)
        for j, m, mp in [(3, 1, -2), (F(7, 2), F(1, 2), F(5, 2)), (6, 0, 0)]:
            exact = float(wigner_d_exact(j, m, mp, F(3, 5), F(4, 5)))
            assert wigner_d(j, m, mp, beta) == pytest.approx(exact, abs=1e-13)

    def test_orthogonal_large_j(self):
        d = wigner_d_matrix(100, 1.1)
        assert np.max(np.abs(d @ d.T - np.eye(201))) < 1e-11

    def test_symmetry(self):
        for j, m, mp in [(10, 3, -7), (F(21, 2), F(5, 2), F(-9, 2))]:
            v = wigner_d(j, m, mp, 0.9)
            assert wigner_d(j, -mp, -m, 0.9) == pytest.approx(v, abs=1e-14)
            assert wigner_d(j, mp, m, 0.9) == pytest.approx((-1) ** int(m - mp) * v, abs=1e-14)

    def test_projection_domain(self):
        with pytest.raises(DomainError):
            wigner_d(2, 3, 0, 0.5)
        with pytest.raises(DomainError):
            wigner_d(2, F(1, 2), 0, 0.5)
