import pytest

from prodpolar.latency import (
    LatencyModelInput,
    best_case_delta,
    delta,
    latency_table,
    product_delta,
    reference_rows,
    table_to_csv,
    worst_case_delta,
)

# All six step columns for the built-in design points.
EXPECTED_ROWS = [
    (1024, 784, 2046, 2294, 62, 2830, 3190, 90),
    (1024, 841, 2046, 2294, 62, 2876, 3240, 91),
    (4096, 3136, 8190, 8694, 126, 11326, 12054, 182),
    (4096, 3249, 8190, 8694, 126, 11508, 12244, 184),
    (16384, 12544, 32766, 33782, 254, 45310, 46774, 366),
    (16384, 13225, 32766, 33782, 254, 46038, 47518, 370),
    (65536, 50176, 131070, 133110, 510, 181246, 184182, 734),
    (65536, 52900, 131070, 133110, 510, 184155, 187119, 741),
    (262144, 200704, 524286, 528374, 1022, 724990, 730870, 1470),
    (262144, 211600, 524286, 528374, 1022, 736623, 742555, 1483),
]


class TestDelta:
    def test_sc_values(self):
        assert delta("sc", 1024) == 2046
        assert delta("sc", 2) == 2

    def test_scl_values(self):
        assert delta("scl", 262144, 200704) == 724990
        assert delta("scl", 1024, 784) == 2830

    def test_scl_needs_k(self):
        with pytest.raises(ValueError):
            delta("scl", 8)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            delta("sc", 100)


class TestProductDelta:
    def make(self, **kw):
        base = dict(
            algo="sc", N=1024, K=784, N_r=32, N_c=32, K_r=28, K_c=28, t=4
        )
        base.update(kw)
        return LatencyModelInput(**base)

    def test_worst_case_sc(self):
        assert worst_case_delta(self.make()) == 4 * 62 + 2046 == 2294

    def test_best_case_sc(self):
        assert best_case_delta(self.make()) == 62

    def test_best_case_scl(self):
        assert best_case_delta(self.make(algo="scl")) == 90

    def test_monotone_in_t_avg_and_gamma(self):
        lo = product_delta(self.make(t_avg=1.0, gamma=0.0))
        mid = product_delta(self.make(t_avg=2.0, gamma=0.3))
        hi = product_delta(self.make(t_avg=4.0, gamma=1.0))
        assert lo <= mid <= hi

    def test_speedup_ratio_small_at_good_operating_point(self):
        inp = self.make(N=262144, K=200704, N_r=512, N_c=512, K_r=448, K_c=448)
        ratio = product_delta(inp) / delta("sc", inp.N)
        assert ratio < 0.01

    def test_operating_point_regression(self):
        # measured-point evaluation of the cost model at N = 512^2
        inp = self.make(
            N=262144, K=200704, N_r=512, N_c=512, K_r=448, K_c=448,
            t_avg=1.1, gamma=6e-3,
        )
        assert product_delta(inp) == pytest.approx(1.1 * 1022 + 6e-3 * 524286)
        assert product_delta(inp) == pytest.approx(4269.916, abs=1e-3)

    def test_unequal_sides_use_longer_one(self):
        inp = LatencyModelInput(
            algo="scl", N=32, K=12, N_r=8, N_c=4, K_r=6, K_c=2, t_avg=1.0,
            gamma=0.0,
        )
        assert product_delta(inp) == 2 * 8 + 6 - 2

    def test_validation(self):
        with pytest.raises(ValueError):
            self.make(N=512)
        with pytest.raises(ValueError):
            self.make(gamma=1.5)
        with pytest.raises(ValueError):
            self.make(t_avg=0.5)


class TestTable:
    def test_reference_rows_exact(self):
        assert reference_rows() == EXPECTED_ROWS

    def test_worst_equals_4bc_plus_flat(self):
        for row in reference_rows():
            _, _, sc, psc_wc, psc_bc, scl, pscl_wc, pscl_bc = row
            assert psc_wc == 4 * psc_bc + sc
            assert pscl_wc == 4 * pscl_bc + scl

    def test_user_pair(self):
        rows = latency_table(extra_pairs=[(4, 2)])
        row = rows[-1]
        assert row[0] == 4 and row[1] == 2
        assert row[2] == delta("sc", 4) == 6
        # 2x2 components, rate-matched dimension ceil(sqrt(1/2)*2) = 2
        assert row[4] == delta("sc", 2) == 2
        assert row[7] == delta("scl", 2, 2) == 4

    def test_user_pair_validation(self):
        with pytest.raises(ValueError):
            latency_table(extra_pairs=[(6, 2)])
        with pytest.raises(ValueError):
            latency_table(extra_pairs=[(8, 9)])

    def test_csv_layout(self):
        text = table_to_csv(reference_rows())
        lines = text.strip().split("\n")
        assert lines[0] == "N,K,delta_sc,psc_wc,psc_bc,delta_scl,pscl_wc,pscl_bc"
        assert lines[1] == "1024,784,2046,2294,62,2830,3190,90"
        assert lines[3] == "4096,3136,8190,8694,126,11326,12054,182"
        assert len(lines) == 11
