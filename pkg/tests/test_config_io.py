import json

import pytest

from tomokit import io
from tomokit.config import ConfigError, RunConfig
from tomokit.grids import Grid1D
from tomokit.states import CatState, CoherentState


def test_parse_full_config():
    cfg = RunConfig.parse("""
        # two-mode odd cat
        state = cat
        modes = 2
        alpha_re = 1.0, 0.0
        alpha_im = 0.0, 0.5
        parity = -1
        grid.min = -7
        grid.max = 7
        grid.points = 100
        tol.norm = 1e-5
        seed = 7
        query = 0.1, 1, 0, 0, 1
        query = 0.2, 1, 1, 0, 0
    """)
    st = cfg.build_state()
    assert isinstance(st, CatState) and st.parity == -1
    assert st.alphas == (1 + 0j, 0.5j)
    assert cfg.axis(Grid1D(-1, 1, 3)) == Grid1D(-7.0, 7.0, 100)
    assert cfg.tol.norm == 1e-5 and cfg.seed == 7
    assert len(cfg.query_batch()) == 2


@pytest.mark.parametrize("text", ["bogus = 1", "state = cat\nstate = vacuum", "tol.nope = 1", "state = squeezed",
                                  "just words", "parity = 2", "modes = two"])
def test_bad_configs(text):
    with pytest.raises(ConfigError):
        RunConfig.parse(text)


def test_amplitude_mode_mismatch():
    cfg = RunConfig.parse("state = coherent\nmodes = 2\nalpha_re = 1")
    with pytest.raises(ConfigError):
        cfg.build_state()


def test_vacuum_default():
    assert RunConfig().build_state() == CoherentState.vacuum(1)


def test_query_file(tmp_path):
    f = tmp_path / "q.csv"
    f.write_text("X,mu1,nu1\n0,1,0\n# comment\n0.5,0.3,0.4\n")
    cfg = RunConfig.parse(f"queries = {f}")
    assert [b[0] for b in cfg.query_batch()] == [0.0, 0.5]
    with pytest.raises(ConfigError):
        RunConfig.parse("query = 0,1").query_batch()


def test_csv_and_json_formatting():
    text = io.csv_text(["a", "b"], [(0.1, 1 / 3)], axes=[Grid1D(-1, 1, 3)])
    assert text == "# axis: -1 1 3\na,b\n0.10000000000000001,0.33333333333333331\n"
    out = io.json_text({"b": 1.0, "a": [complex(1, 2)]})
    assert json.loads(out) == {"a": [[1.0, 2.0]], "b": 1.0}
    assert out.index('"a"') < out.index('"b"')
