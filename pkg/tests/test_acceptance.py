"""Every acceptance criterion at its stated tolerance, one PASS/FAIL line each."""

import pytest

from lwdisc.verify import CRITERIA, DETERMINISM, NAMES, determinism

_results = {}


def result(name):
    if name not in _results:
        if name == DETERMINISM:
            for other in CRITERIA:
                result(other)
            _results[name] = determinism(_results, parallel=8)
        else:
            _results[name] = CRITERIA[name](1)
    return _results[name]


@pytest.mark.parametrize("name", NAMES)
def test_criterion(name, capsys):
    res = result(name)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.line()
