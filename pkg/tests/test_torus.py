import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from kglab.lattice import LatticeVector
from kglab.psifunc import PowerLaw, TablePsi
from kglab.surd import QuadraticSurd
from kglab.torus import (OverlapGeometry, TorusSet1D, TorusSet2D, as_shift,
                         measure_2d, overlap_2d, overlap_2d_grid_oracle,
                         overlap_exact_1d, overlap_sweep_oracle,
                         parallel_overlap_bound, weight_integral, weight_w)
from kglab.witness import NonLiouvilleWitness

SQRT2 = QuadraticSurd.sqrt(2)
PSI_CONST = PowerLaw(F(1, 10), F(0))
PSI_ROOT = PowerLaw(F(1, 4), F(1, 2))
W_SQRT2 = NonLiouvilleWitness(eta=1, c=F(4), C=F(1, 4), epsilon=F(1, 2),
                              q_max=10 ** 6, analytic=True)


def geom(d, t1, e, t2, s1=F(0), s2=F(0)):
    return OverlapGeometry.from_pair(TorusSet1D(d, s1, F(t1)),
                                     TorusSet1D(e, s2, F(t2)))


class TestWeight:
    def test_plateau_value(self):
        g = geom(2, "1/10", 3, "1/5")
        assert weight_w(0, g) == 2 * g.delta

    def test_support_endpoint(self):
        g = geom(2, "1/10", 3, "1/5")
        assert weight_w(g.Delta + g.delta, g) == 0
        assert weight_w(-(g.Delta + g.delta), g) == 0

    def test_even(self):
        g = geom(3, "1/7", 5, "1/9")
        for y in (F(1, 100), F(3, 100), F(1, 15)):
            assert weight_w(y, g) == weight_w(-y, g)

    def test_integral(self):
        for args in ((2, "1/10", 3, "1/5"), (1, "1/3", 1, "1/4"),
                     (6, "1/2", 4, "1/7")):
            g = geom(*args)
            # exact piecewise integration: plateau + two triangles
            assert weight_integral(g) == 4 * g.delta * g.Delta


class TestOverlap1D:
    def test_nested_arcs(self):
        A = TorusSet1D(1, F(0), F(1, 10))
        B = TorusSet1D(1, F(0), F(1, 5))
        assert overlap_exact_1d(A, B) == F(1, 5)

    def test_d2_e1(self):
        A = TorusSet1D(2, F(0), F(1, 10))
        B = TorusSet1D(1, F(0), F(1, 10))
        assert overlap_exact_1d(A, B) == F(1, 10)

    def test_equal_frequency_nested(self):
        A = TorusSet1D(3, F(0), F(6, 100))
        B = TorusSet1D(3, F(0), F(9, 100))
        assert overlap_exact_1d(A, B) == F(12, 100)

    def test_oracle_idempotent(self):
        A = TorusSet1D(5, F(1, 7), F(1, 5))
        assert overlap_sweep_oracle(A, A) == A.measure

    def test_disjoint(self):
        A = TorusSet1D(1, F(0), F(1, 10))
        B = TorusSet1D(1, F(1, 2), F(1, 10))
        assert overlap_exact_1d(A, B) == 0
        assert overlap_sweep_oracle(A, B) == 0

    def test_formula_equals_oracle_grid(self):
        # small slice of the acceptance grid
        shifts = [F(k, 12) for k in range(12)]
        for d in (1, 2, 3, 5, 8):
            for e in (1, 2, 4, 7):
                for t1 in (F(1, 20), F(1, 5)):
                    for s in shifts[::3]:
                        A = TorusSet1D(d, s, t1)
                        B = TorusSet1D(e, F(0), F(1, 10))
                        assert overlap_exact_1d(A, B) == \
                            overlap_sweep_oracle(A, B)

    def test_irrational_shift_formula_equals_oracle(self):
        sh = as_shift(SQRT2)
        for d, e in ((1, 1), (2, 3), (4, 6), (5, 5)):
            A = TorusSet1D(d, sh, F(1, 7))
            B = TorusSet1D(e, -sh, F(1, 9))
            assert overlap_exact_1d(A, B) == overlap_sweep_oracle(A, B)


class TestOverlap2D:
    def test_independent_product(self):
        v, tag = overlap_2d((1, 0), (0, 1), PSI_CONST, SQRT2)
        assert v == F(1, 25) and tag == "independent"

    def test_diagonal(self):
        v, tag = overlap_2d((2, 4), (2, 4), PSI_CONST, SQRT2)
        assert v == measure_2d((2, 4), PSI_CONST) and tag == "diagonal"

    def test_antipodal_tagged_diagonal(self):
        v, tag = overlap_2d((1, 3), (-1, -3), PSI_CONST, SQRT2)
        assert tag == "diagonal"
        assert v <= measure_2d((1, 3), PSI_CONST)

    def test_parallel_reduced_vs_grid(self):
        v, tag = overlap_2d((2, 4), (1, 2), PSI_ROOT, SQRT2)
        assert tag == "parallel-reduced"
        est, bound = overlap_2d_grid_oracle((2, 4), (1, 2), PSI_ROOT, SQRT2,
                                            1000)
        assert abs(est - v) <= bound

    def test_symmetry_fuzz(self):
        rng = random.Random(2)
        for _ in range(60):
            q = (rng.randint(-6, 6) or 1, rng.randint(-6, 6))
            r = (rng.randint(-6, 6) or 2, rng.randint(-6, 6))
            a = overlap_2d(q, r, PSI_ROOT, SQRT2)[0]
            b = overlap_2d(r, q, PSI_ROOT, SQRT2)[0]
            assert a == b
            assert a <= min(measure_2d(q, PSI_ROOT), measure_2d(r, PSI_ROOT))

    def test_measure_examples(self):
        assert measure_2d((3, 1), PSI_CONST) == F(1, 5)
        assert measure_2d((1, 1), TablePsi({})) == 0
        assert measure_2d((1, 0), PowerLaw(F(1, 2), F(0))) == 1


class TestGridOracle:
    def test_full_torus(self):
        psi_half = PowerLaw(F(1, 2), F(0))
        est, _ = overlap_2d_grid_oracle((1, 0), (0, 1), psi_half, SQRT2, 200)
        assert est == 1

    def test_empty(self):
        est, _ = overlap_2d_grid_oracle((1, 0), (0, 1), TablePsi({}), SQRT2, 200)
        assert est == 0

    def test_declared_rate(self):
        v, _ = overlap_2d((3, 1), (1, 2), PSI_CONST, SQRT2)
        errs = []
        for res in (500, 1000, 2000):
            est, bound = overlap_2d_grid_oracle((3, 1), (1, 2), PSI_CONST,
                                                SQRT2, res)
            assert abs(est - v) <= bound
            errs.append((res, float(bound)))
        # declared bound decays ~ 1/res
        assert errs[0][1] > errs[2][1] > 0


class TestParallelBound:
    def test_provably_zero_case(self):
        # d = gcd(q) = 2, threshold 64; r norm 65 exceeds it
        res = parallel_overlap_bound((2, 130), (1, 65), PSI_ROOT, W_SQRT2)
        assert res.provably_zero and res.threshold == 64
        v, _ = overlap_2d((2, 130), (1, 65), PSI_ROOT, SQRT2)
        assert v == 0

    def test_bound_value_shape(self):
        res = parallel_overlap_bound((2, 10), (1, 5), PSI_ROOT, W_SQRT2)
        assert res.kind == "bound"
        pq, pr = PSI_ROOT(10), PSI_ROOT(5)
        assert res.value == 4 * pq * pr + 4 * (pq / 2) * 1

    def test_bound_dominates_overlap(self):
        for q_vec, r_vec in (((2, 10), (1, 5)), ((4, 8), (1, 2)),
                             ((0, 9), (0, 3))):
            res = parallel_overlap_bound(q_vec, r_vec, PSI_ROOT, W_SQRT2)
            v, _ = overlap_2d(q_vec, r_vec, PSI_ROOT, SQRT2)
            if res.provably_zero:
                assert v == 0
            else:
                assert v <= res.value

    def test_rejects_nonparallel(self):
        with pytest.raises(ValueError):
            parallel_overlap_bound((2, 10), (1, 6), PSI_ROOT, W_SQRT2)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9),
       st.integers(0, 10), st.integers(0, 10),
       st.integers(-12, 12), st.integers(-12, 12))
def test_formula_oracle_property(d, e, n1, n2, k1, k2):
    A = TorusSet1D(d, F(k1, 12), F(n1, 20))
    B = TorusSet1D(e, F(k2, 12), F(n2, 20))
    assert overlap_exact_1d(A, B) == overlap_sweep_oracle(A, B)


def test_torus_set_2d_measure():
    s = TorusSet2D(LatticeVector(2, 3), F(1, 3), F(1, 8))
    assert s.measure == F(1, 4)
