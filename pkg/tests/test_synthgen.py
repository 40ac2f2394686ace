import numpy as np
import pytest

from seistex.imagecore import load_manifest, normalize
from seistex.synthgen import CLASS_KINDS, SynthSpec, generate, generate_dataset


class TestGenerate:
    def test_deterministic(self):
        spec = SynthSpec("layered", 150, 300, seed=1)
        np.testing.assert_array_equal(generate(spec), generate(spec))

    def test_all_kinds_render(self):
        for kind in CLASS_KINDS:
            img = generate(SynthSpec(kind, 64, 64, seed=3))
            assert img.shape == (64, 64)
            assert img.min() >= 0 and img.max() <= 255

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            SynthSpec("volcano", 64, 64, seed=0)

    def test_min_size(self):
        with pytest.raises(ValueError):
            SynthSpec("layered", 16, 300, seed=0)

    def test_fault_trace_breaks_column_correlation(self):
        img = normalize(generate(SynthSpec("faulted", 150, 300, seed=2)))
        # adjacent-column correlation dips sharply at fault positions
        cols = img.T
        corr = np.array(
            [np.corrcoef(cols[i], cols[i + 1])[0, 1] for i in range(cols.shape[0] - 1)]
        )
        assert corr.min() < np.median(corr) - 0.25

    def test_chaotic_less_row_correlated_than_layered(self):
        def row_lag1(img):
            x = normalize(img)
            a, b = x[:, :-1].ravel(), x[:, 1:].ravel()
            return np.corrcoef(a, b)[0, 1]

        chaotic = generate(SynthSpec("chaotic", 64, 64, seed=3))
        layered = generate(SynthSpec("layered", 64, 64, seed=3))
        assert row_lag1(chaotic) < row_lag1(layered)


class TestGenerateDataset:
    def test_layout_and_manifest(self, tmp_path):
        manifest_path = generate_dataset(tmp_path / "ds", per_class=3, height=64, width=64, seed=5)
        man = load_manifest(manifest_path)
        assert len(man) == 12
        assert man.class_sizes() == {kind: 3 for kind in CLASS_KINDS}
        for p in man.paths():
            assert p.exists()

    def test_repeat_run_identical_bytes(self, tmp_path):
        m1 = generate_dataset(tmp_path / "a", per_class=2, height=48, width=48, seed=9)
        m2 = generate_dataset(tmp_path / "b", per_class=2, height=48, width=48, seed=9)
        for p1, p2 in zip(load_manifest(m1).paths(), load_manifest(m2).paths()):
            assert p1.read_bytes() == p2.read_bytes()
