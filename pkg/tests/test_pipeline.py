import numpy as np
import pytest
from scipy.ndimage import gaussian_filter

from page_edges.errors import InvalidParameterError, ShapeError
from page_edges.kernels import KernelParams, direction_bins
from page_edges.pipeline import page_run, page_run_color, page_run_multiband

ANALOG = KernelParams(morph_flag=False)


def test_output_shape_and_range(rng):
    img = rng.random((64, 64))
    t = page_run(img, KernelParams(direction_bins=8, morph_flag=False))
    assert t.shape == (64, 64, 8)
    assert np.all(t.data > -np.pi) and np.all(t.data <= np.pi)
    np.testing.assert_array_equal(t.directions, direction_bins(8))
    assert not t.binary


def test_constant_image_binary_is_empty():
    t = page_run(np.full((32, 24), 0.8), KernelParams(direction_bins=4))
    assert t.binary
    np.testing.assert_array_equal(t.data, 0)


def test_zero_image():
    np.testing.assert_array_equal(page_run(np.zeros((16, 16)), ANALOG).data, 0)


def test_binary_values(rng):
    img = gaussian_filter(rng.random((48, 48)), 2)
    t = page_run(img, KernelParams(direction_bins=6))
    assert set(np.unique(t.data)) <= {0.0, 1.0}
    assert t.data.any()


def test_default_params_find_edges():
    img = np.full((64, 64), 0.2)
    img[:, 32:] = 0.9
    t = page_run(img)
    assert t.data.any()


@pytest.mark.parametrize("shape", [(1, 5), (5, 1)])
def test_rejects_tiny(shape):
    with pytest.raises(ShapeError):
        page_run(np.ones(shape), ANALOG)


def test_rejects_nan():
    img = np.ones((4, 4))
    img[1, 1] = np.nan
    with pytest.raises(InvalidParameterError):
        page_run(img, ANALOG)


def test_deterministic(rng):
    img = rng.random((40, 33))
    p = KernelParams(direction_bins=5)
    assert page_run(img, p).data.tobytes() == page_run(img, p).data.tobytes()


class TestMultiband:
    def test_single_band_matches_run(self, rng):
        img = rng.random((20, 20))
        [t] = page_run_multiband(img, [ANALOG])
        np.testing.assert_array_equal(t.data, page_run(img, ANALOG).data)

    def test_empty(self):
        with pytest.raises(InvalidParameterError):
            page_run_multiband(np.ones((4, 4)), [])

    def test_shapes_follow_bands(self, rng):
        bands = [ANALOG.replace(direction_bins=d) for d in (1, 4, 7)]
        out = page_run_multiband(rng.random((16, 12)), bands)
        assert [t.shape for t in out] == [(16, 12, 1), (16, 12, 4), (16, 12, 7)]

    def test_higher_center_prefers_fine_texture(self):
        yy, xx = np.mgrid[0:64, 0:64]
        checker = (((yy // 2) + (xx // 2)) % 2).astype(float)  # 4-pixel period
        ramp = gaussian_filter(np.clip((xx - 16) / 32, 0, 1), 4)
        low, high = (ANALOG.replace(mu_1=mu, sigma_lpf=0.5) for mu in (0.0, 0.15))

        def response(img, p):
            return np.abs(page_run(img, p).data).mean()

        assert response(checker, high) > response(ramp, high)
        assert response(checker, high) / response(ramp, high) > response(checker, low) / response(ramp, low)


class TestColor:
    def test_single_channel(self, rng):
        img = rng.random((18, 18))
        [t] = page_run_color([img], ANALOG)
        np.testing.assert_array_equal(t.data, page_run(img, ANALOG).data)

    def test_identical_channels(self, rng):
        img = rng.random((18, 22))
        ts = page_run_color(np.dstack([img, img, img]), ANALOG)
        assert len(ts) == 3
        for t in ts[1:]:
            np.testing.assert_array_equal(t.data, ts[0].data)

    def test_constant_channel_is_empty(self, rng):
        img = gaussian_filter(rng.random((32, 32)), 1.5)
        ts = page_run_color([img, np.full((32, 32), 0.5), img], KernelParams(direction_bins=4))
        np.testing.assert_array_equal(ts[1].data, 0)

    def test_permutation(self, rng):
        chans = [rng.random((12, 12)) for _ in range(3)]
        fwd = page_run_color(chans, ANALOG)
        rev = page_run_color(chans[::-1], ANALOG)
        for a, b in zip(fwd, rev[::-1]):
            np.testing.assert_array_equal(a.data, b.data)

    def test_mismatched(self):
        with pytest.raises(ShapeError):
            page_run_color([np.ones((4, 4)), np.ones((4, 5))], ANALOG)

    @pytest.mark.parametrize("n", [0, 5])
    def test_channel_count(self, n):
        with pytest.raises(ShapeError):
            page_run_color([np.ones((4, 4))] * n, ANALOG)
