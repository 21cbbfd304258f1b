import numpy as np
import pytest

from tomokit.grids import Grid1D, trapezoid
from tomokit.tolerances import DEFAULT


def test_grid_basics():
    g = Grid1D(-2.0, 2.0, 5)
    assert g.spacing == 1.0
    assert np.allclose(g.nodes, [-2, -1, 0, 1, 2])
    assert g.header() == "# axis: -2.0 2.0 5"
    assert trapezoid(np.ones(5), g) == pytest.approx(4.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D(1.0, -1.0, 10)
    with pytest.raises(ValueError):
        Grid1D(-1.0, 1.0, 1)


def test_with_spacing_is_odd():
    g = Grid1D.with_spacing(3.0, 0.7)
    assert g.points % 2 == 1 and g.spacing <= 0.7
    assert g.node_indices(0.0) is not None


def test_tolerance_override():
    t = DEFAULT.override(norm=1e-3)
    assert t.norm == 1e-3 and DEFAULT.norm == 1e-6
    with pytest.raises(ValueError):
        DEFAULT.override(nope=1.0)
