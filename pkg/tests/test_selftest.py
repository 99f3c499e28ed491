import numpy as np
import pytest

from gaussact import channels, cli, selftest


def _by_name(results):
    return {name: passed for name, passed, _, _ in results}


def test_all_suites_pass():
    results = selftest.run_selftest(out=None)
    assert [r[0] for r in results] == [name for name, _ in selftest.SUITES]
    assert all(passed for _, passed, _, _ in results)


def test_cli_selftest_exit_zero(capsys):
    assert cli.main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "all 8 invariant suites passed" in out


def test_corrupted_ppt_matrix_is_caught(monkeypatch):
    original = channels.ppt_matrix

    def corrupted(a, b):
        S = original(a, b).copy()
        S[0, 0] *= 1.01
        return S

    monkeypatch.setattr(channels, "ppt_matrix", corrupted)
    status = _by_name(selftest.run_selftest(out=None))
    assert not status["symplecticity"]
    assert status["tmsv-purity"]


def test_broken_complementary_is_caught(monkeypatch):
    original = channels.apply_complementary
    monkeypatch.setattr(channels, "apply_complementary", lambda ch, g, check_physical=True: original(ch, g) * 1.001)
    status = _by_name(selftest.run_selftest(out=None))
    assert not status["dilation-oracle"]


def _cfg(pair):
    from gaussact.activation import SearchConfig

    return SearchConfig(ppt_a=pair[0], ppt_b=pair[1], ppt_grid=(pair,))


def test_non_ppt_default_is_caught(monkeypatch):
    monkeypatch.setattr(selftest, "SearchConfig", lambda: _cfg((2.0, 1.0)))
    status = _by_name(selftest.run_selftest(out=None))
    assert not status["ppt-choi"]


def test_cli_selftest_reports_failure(monkeypatch, capsys):
    monkeypatch.setattr(selftest, "SUITES", selftest.SUITES + [("always-fails", _fail)])
    monkeypatch.setattr(cli, "run_selftest", selftest.run_selftest)
    assert cli.main(["selftest"]) == 1
    assert "always-fails" in capsys.readouterr().out


def _fail():
    raise selftest.InvariantFailure("forced")


@pytest.mark.parametrize("a,b", [(1.0, 1.0), (1.5, 1.5), (2.0, 3.0)])
def test_listed_pairs_are_not_ppt(a, b):
    # symplectic and CPTP, yet the partially transposed Choi state is unphysical
    ch = channels.ppt_channel(a, b)
    assert ch.cptp_gap() >= -1e-9
    assert min(channels.choi_ppt_gap(ch, r) for r in (0.5, 1.0, 2.0)) < -1e-3


def test_cli_selftest_fault_injection_names_invariant(monkeypatch, capsys):
    original = channels.ppt_matrix
    monkeypatch.setattr(channels, "ppt_matrix", lambda a, b: original(a, b) + 1e-3 * np.eye(8))
    assert cli.main(["selftest"]) == 1
    assert "symplecticity" in capsys.readouterr().out.split("failed invariants:")[1]
