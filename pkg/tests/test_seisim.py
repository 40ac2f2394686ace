import numpy as np
import pytest

from seistex.seisim import (
    SubbandStats,
    discontinuity_map,
    dm_similarity,
    seisim,
    stsim1_image,
    stsim1_pair,
    subband_stats,
)


def rand_image(shape, seed=0):
    return np.random.default_rng(seed).standard_normal(shape)


class TestSubbandStats:
    def test_constant_band(self):
        s = subband_stats(np.full((5, 6), 3.0))
        assert (s.mean, s.var, s.rho_h, s.rho_v) == (3.0, 0.0, 0.0, 0.0)

    def test_alternating_columns(self):
        band = np.tile([0.0, 1.0], (4, 5))
        assert subband_stats(band).rho_h == pytest.approx(-1.0, abs=1e-12)

    def test_vertical_stripes(self):
        band = np.tile(np.arange(6.0), (5, 1))
        assert subband_stats(band).rho_v == pytest.approx(1.0, abs=1e-12)

    def test_rho_in_range(self):
        for seed in range(20):
            s = subband_stats(rand_image((8, 9), seed))
            assert -1.0 <= s.rho_h <= 1.0
            assert -1.0 <= s.rho_v <= 1.0
            assert s.var >= 0.0

    def test_degenerate_size_raises(self):
        with pytest.raises(ValueError):
            subband_stats(np.zeros((1, 5)))


class TestStsim1Pair:
    def test_identical_stats(self):
        x = SubbandStats(0.5, 2.0, 0.3, -0.1)
        assert stsim1_pair(x, x) == pytest.approx(1.0, abs=1e-9)

    def test_opposite_autocorrelation_zeroes_score(self):
        x = SubbandStats(1.0, 1.0, 1.0, 0.0)
        y = SubbandStats(1.0, 1.0, -1.0, 0.0)
        assert stsim1_pair(x, y) == 0.0

    def test_luminance_term_value(self):
        x = SubbandStats(1.0, 2.0, 0.3, -0.2)
        y = SubbandStats(2.0, 2.0, 0.3, -0.2)
        assert stsim1_pair(x, y) == pytest.approx(((4 + 1e-4) / (5 + 1e-4)) ** 0.25, abs=1e-9)

    def test_exchange_symmetry(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            x = SubbandStats(rng.normal(), rng.uniform(0, 3), rng.uniform(-1, 1), rng.uniform(-1, 1))
            y = SubbandStats(rng.normal(), rng.uniform(0, 3), rng.uniform(-1, 1), rng.uniform(-1, 1))
            assert stsim1_pair(x, y) == pytest.approx(stsim1_pair(y, x), abs=1e-15)
            assert 0.0 <= stsim1_pair(x, y) <= 1.0 + 1e-12


class TestStsim1Image:
    def test_self_similarity(self):
        a = rand_image((64, 64), 2)
        assert stsim1_image(a, a) == pytest.approx(1.0, abs=1e-9)

    def test_symmetry(self):
        a, b = rand_image((64, 64), 3), rand_image((64, 64), 4)
        assert stsim1_image(a, b) == pytest.approx(stsim1_image(b, a), abs=1e-12)

    def test_noise_below_self(self):
        a, b = rand_image((64, 64), 5), rand_image((64, 64), 6)
        assert stsim1_image(a, b) < stsim1_image(a, a)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            stsim1_image(rand_image((64, 64)), rand_image((64, 80)))


class TestDiscontinuityMap:
    def test_constant_image_all_zero(self):
        dm = discontinuity_map(np.full((20, 20), 1.5))
        np.testing.assert_array_equal(dm, 0.0)

    def test_range(self):
        dm = discontinuity_map(rand_image((30, 40), 7))
        assert dm.min() >= 0.0 and dm.max() <= 1.0

    def test_fault_column_stands_out(self):
        # layered image whose right half is shifted vertically: the fault
        # column must be more discontinuous than columns 10 px away
        h, w, fault = 60, 80, 40
        yy = np.arange(h)[:, None] * np.ones((1, w))
        yy[:, fault:] += 4.5
        img = np.sin(2 * np.pi * 0.15 * yy)
        dm = discontinuity_map(img)
        assert dm[:, fault - 1].mean() > dm[:, fault - 11].mean()
        assert dm[:, fault - 1].mean() > dm[:, fault + 9].mean()

    def test_smooth_layers_low_discontinuity(self):
        yy = np.arange(60)[:, None] * np.ones((1, 80))
        img = np.sin(2 * np.pi * 0.1 * yy)
        assert discontinuity_map(img).mean() < 0.1

    def test_undersized_raises(self):
        with pytest.raises(ValueError):
            discontinuity_map(np.zeros((4, 10)))


class TestDmSimilarity:
    def test_identity(self):
        d = discontinuity_map(rand_image((30, 30), 8))
        assert dm_similarity(d, d) == 1.0

    def test_symmetry(self):
        d1 = discontinuity_map(rand_image((30, 30), 9))
        d2 = discontinuity_map(rand_image((30, 30), 10))
        assert dm_similarity(d1, d2) == dm_similarity(d2, d1)

    def test_opposite_extremes(self):
        from seistex.seisim import dm_similarity_from_stats, SubbandStats

        s1 = SubbandStats(0, 1, 1.0, 0.0)
        s2 = SubbandStats(0, 1, -1.0, 0.0)
        assert dm_similarity_from_stats(s1, s2) == 0.0


class TestSeisim:
    def test_self_similarity(self):
        a = rand_image((64, 64), 11)
        assert seisim(a, a) == pytest.approx(1.0, abs=1e-9)

    def test_component_combination(self):
        assert np.sqrt(0.81 * 0.64) == pytest.approx(0.72, abs=1e-12)

    def test_symmetry(self):
        a, b = rand_image((64, 64), 12), rand_image((64, 64), 13)
        assert seisim(a, b) == pytest.approx(seisim(b, a), abs=1e-12)

    def test_bounded_and_self_maximal(self):
        a = rand_image((64, 64), 14)
        for seed in range(15, 20):
            b = rand_image((64, 64), seed)
            s = seisim(a, b)
            assert 0.0 <= s <= 1.0 + 1e-12
            assert seisim(a, a) >= s

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            seisim(rand_image((64, 64)), rand_image((64, 72)))
