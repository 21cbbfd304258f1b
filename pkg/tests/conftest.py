import warnings

import pytest

CRITERIA = {
    1: "entropy curves",
    2: "closed-form cat tomogram vs Radon oracle",
    3: "entropy cross-route via purity",
    4: "reconstruction round trip",
    5: "tomogram property suite",
    6: "star-product algebra",
    7: "classical limit",
    8: "consistency of maps",
    9: "probability module",
}
_results: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str) -> None:
        _results[n] = (bool(ok), detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    ran = [n for n in CRITERIA if n in _results]
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n in CRITERIA:
        if n in _results:
            ok, detail = _results[n]
            terminalreporter.write_line(f"criterion {n} [{CRITERIA[n]}]: {'PASS' if ok else 'FAIL'} {detail}")


@pytest.fixture
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yield
