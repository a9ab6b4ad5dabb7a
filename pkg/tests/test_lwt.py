import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wavefuse.lwt import LEGALL53, lift_forward_1d, lift_inverse_1d, lwt2_forward, lwt2_inverse


def oracle_forward(x):
    """Plain-Python LeGall 5/3 with periodic wrap, independent of the kernels."""
    n = len(x) // 2
    high = [x[2 * k + 1] - (x[2 * k] + x[(2 * k + 2) % len(x)]) // 2 for k in range(n)]
    low = [x[2 * k] + (high[k - 1] + high[k] + 2) // 4 for k in range(n)]
    return low, high


def test_scheme_description():
    assert LEGALL53.name == "legall53"
    assert sum(LEGALL53.predict_taps) == -1 and sum(LEGALL53.update_taps) == pytest.approx(0.5)


@pytest.mark.parametrize("c", [0, 7, 255, -40])
def test_constant(c):
    low, high = lift_forward_1d([c] * 6)
    assert high.tolist() == [0, 0, 0] and low.tolist() == [c, c, c]
    assert lift_inverse_1d([c] * 3, [0] * 3).tolist() == [c] * 6


def test_ramp():
    low, high = lift_forward_1d([0, 1, 2, 3, 4, 5])
    # interior predictions are exact; the last one wraps 5 against (4 + 0) / 2
    assert high.tolist() == [0, 0, 3]
    assert low.tolist() == [1, 2, 5]
    assert (low.tolist(), high.tolist()) == oracle_forward([0, 1, 2, 3, 4, 5])


ints = arrays(np.int64, st.integers(1, 20).map(lambda n: 2 * n), elements=st.integers(-5000, 5000))


@given(ints)
def test_matches_oracle(x):
    low, high = lift_forward_1d(x)
    assert (low.tolist(), high.tolist()) == oracle_forward(x.tolist())


@given(ints)
def test_reversible(x):
    assert np.array_equal(lift_inverse_1d(*lift_forward_1d(x)), x)


@given(ints)
def test_inverse_then_forward(x):
    half = x.size // 2
    low, high = x[:half], x[half:]
    l2, h2 = lift_forward_1d(lift_inverse_1d(low, high))
    assert np.array_equal(l2, low) and np.array_equal(h2, high)


def test_zero_bands():
    assert not np.any(lift_inverse_1d([0, 0], [0, 0]))


def test_errors():
    with pytest.raises(ValueError):
        lift_forward_1d([1, 2, 3])
    with pytest.raises(ValueError, match="integer"):
        lift_forward_1d([1.5, 2.0])
    with pytest.raises(ValueError, match="mismatch"):
        lift_inverse_1d([1, 2], [3])


def test_round_trip_1000_images():
    rng = np.random.default_rng(1000)
    for _ in range(1000):
        img = rng.integers(0, 256, size=(16, 16))
        p = lwt2_forward(img, LEGALL53, 4)
        assert np.array_equal(lwt2_inverse(p).samples, img)


@pytest.mark.parametrize("shape", [(16, 16), (20, 12), (13, 19)])
def test_round_trip_any_size(shape, rng):
    img = rng.integers(0, 256, size=shape)
    assert np.array_equal(lwt2_inverse(lwt2_forward(img, levels=2)).samples, img)


def test_constant_image():
    p = lwt2_forward(np.full((16, 16), 77), levels=4)
    assert p.kind == "lifted"
    for trio in p.details:
        for band in trio:
            assert band.dtype == np.int64 and not np.any(band)
    assert np.all(p.approx == 77)


def test_gradient_interior_highs_vanish():
    img = np.add.outer(np.arange(16) * 3, np.arange(16) * 2)
    lh, hl, hh = lwt2_forward(img, levels=1).details[0]
    # only the last row/column sees the wraparound
    assert not np.any(hl[:, :-1]) and not np.any(lh[:-1, :]) and not np.any(hh[:-1, :-1])


def test_two_pyramids_reconstruct_exactly(rng):
    a = rng.integers(0, 256, size=(32, 32))
    b = rng.integers(0, 256, size=(32, 32))
    pa, pb = lwt2_forward(a), lwt2_forward(b)
    assert np.array_equal(lwt2_inverse(pa).samples, a)
    assert np.array_equal(lwt2_inverse(pb).samples, b)


@settings(max_examples=60, deadline=None)
@given(arrays(np.int64, (16, 16), elements=st.integers(0, 255)))
def test_dynamic_range(img):
    p = lwt2_forward(img, levels=4)
    for _, _, band in p.bands():
        assert np.max(np.abs(band)) <= 1024


@pytest.mark.parametrize("pattern", ["checker", "stripes", "impulse"])
def test_dynamic_range_extremes(pattern):
    i, j = np.indices((32, 32))
    img = {
        "checker": 255 * ((i + j) % 2),
        "stripes": 255 * (j % 2),
        "impulse": 255 * ((i == 5) & (j == 9)),
    }[pattern]
    for _, _, band in lwt2_forward(img, levels=4).bands():
        assert np.max(np.abs(band)) <= 1024


def test_rejects_float_image():
    with pytest.raises(ValueError, match="integer"):
        lwt2_forward(np.full((8, 8), 0.5), levels=1)
