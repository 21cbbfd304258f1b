import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomokit.catlab import cat_cm_tomogram, cat_linear_entropy, entropy_sweep
from tomokit.errors import InvalidStateError
from tomokit.states import CatState, CoherentState
from tomokit.tomography import TomographicQuery

sq = st.floats(0, 8, allow_nan=False)


def test_cat_tomogram_examples():
    q = TomographicQuery(0.0, [1, 0], [0, 0])
    assert cat_cm_tomogram(CatState((0, 0), 1), q) == pytest.approx(np.pi**-0.5, abs=1e-12)
    y = np.linspace(-14, 14, 2801)
    for parity in (1, -1):
        s = CatState((1, 0.5j), parity)
        vals = [cat_cm_tomogram(s, TomographicQuery(x, [0.8, 0.3], [-0.4, 0.6])) for x in y]
        assert np.trapezoid(vals, y) == pytest.approx(1, abs=1e-8)


def test_cat_tomogram_rejects_wrong_shapes():
    with pytest.raises(ValueError):
        cat_cm_tomogram(CatState((1.0,), 1), TomographicQuery(0, [1], [0]))
    with pytest.raises(ValueError):
        cat_cm_tomogram(CoherentState((1, 1)), TomographicQuery(0, [1, 0], [0, 0]))


def test_entropy_examples():
    for a2 in (0.1, 0.5, 2.0):
        assert cat_linear_entropy(0.0, a2, 1) == 0.0
        assert cat_linear_entropy(a2, a2, -1) == pytest.approx(0.5, abs=1e-12)
    asym = 0.5 - 0.5 * np.exp(-2)
    assert asym == pytest.approx(0.43233, abs=1e-5)
    for parity in (1, -1):
        assert cat_linear_entropy(40.0, 0.5, parity) == pytest.approx(asym, abs=1e-12)
    assert cat_linear_entropy(20.0, 2.0, 1) == pytest.approx(0.5 - 0.5 * np.exp(-8), abs=1e-6)


def test_entropy_errors():
    with pytest.raises(InvalidStateError):
        cat_linear_entropy(0.0, 0.0, -1)
    with pytest.raises(ValueError):
        cat_linear_entropy(-1.0, 1.0, 1)
    with pytest.raises(ValueError):
        cat_linear_entropy(1.0, 1.0, 0)


@settings(max_examples=200, deadline=None)
@given(sq, sq, st.sampled_from([1, -1]))
def test_entropy_range_and_symmetry(a1, a2, parity):
    if parity == -1 and a1 == 0 and a2 == 0:
        return
    s = cat_linear_entropy(a1, a2, parity)
    assert 0.0 <= s <= 0.5
    assert s == cat_linear_entropy(a2, a1, parity)


def test_small_amplitudes_are_stable():
    # the odd entropy at a1 = a2 stays exactly on the peak even for tiny amplitudes
    assert cat_linear_entropy(1e-12, 1e-12, -1) == pytest.approx(0.5, abs=1e-9)


def test_sweep_shape_and_examples():
    rows = entropy_sweep(1)
    assert len(rows) == 600
    assert rows[0].alpha1_sq == 0.0 and rows[0].entropy == 0.0
    odd = [r for r in entropy_sweep(-1) if r.alpha2_sq == 1.0]
    best = max(odd, key=lambda r: r.entropy)
    assert abs(best.alpha1_sq - 1.0) <= 5.0 / 199
    assert best.entropy == pytest.approx(0.5, abs=1e-6)


def test_sweep_range_errors():
    with pytest.raises(ValueError):
        entropy_sweep(1, (1.0,), (5.0, 0.0, 10))
    with pytest.raises(ValueError):
        entropy_sweep(1, (1.0,), (0.0, 5.0, 0))
