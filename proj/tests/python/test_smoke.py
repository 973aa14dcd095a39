import math

import pytest

import qnetcost as q


def test_ideal_threshold():
    params = q.CostParams(X=100, Y=10, Z=1)
    assert q.n_min_approx(params) == pytest.approx(11.0)
    scan = q.scan_window(params, epsilon=0.01, n_from=2, n_to=200)
    assert scan["n_min"] == 11
    assert scan["n_max"] is None
    assert scan["open_at_bound"]
    assert len(scan["rows"]) == 199


def test_purified_scan_window():
    params = q.CostParams(X=100, Y=10, Z=1, U=100, b=100)
    scheme = q.SchemeParams(scheme_id=2, F0=0.95, a=0.5, b=100)
    scan = q.scan_window(params, 0.01, 2, 1000, scheme=scheme, target_fidelity=0.995)
    assert scan["steps"] == 4
    assert (scan["n_min"], scan["n_max"]) == (53, 358)


def test_probabilities_and_repetitions():
    noise = q.NoiseSpec(x_n=0.8)
    assert q.p_success("entangled", 2, math.pi / 2, 0.0, noise) == pytest.approx(0.9)
    assert q.simulate_success_probability("entangled", 3, 0.4, 0.1, noise) == pytest.approx(
        q.p_success("entangled", 3, 0.4, 0.1, noise), abs=1e-12
    )
    assert q.r1_required(4, 0.05) == pytest.approx(100.0)
    assert q.r2_required(4, 0.05, x_n=0.9) == pytest.approx(25 / 0.81)
    assert q.precision(0.5, 0.5, 100) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        q.p_success("sideways", 2, 0.0, 0.0)


def test_ghz_fidelity():
    assert q.ghz_fidelity(5) == pytest.approx(1.0, abs=1e-12)
    assert q.ghz_fidelity(3, pair_fidelity=0.95) == pytest.approx(0.9027777777777778, abs=1e-12)
    with pytest.raises(q.CapExceeded):
        q.ghz_fidelity(9, pair_fidelity=0.9)


def test_empirical_precision_is_deterministic():
    a = q.empirical_precision("entangled", 4, 0.3, 100, 50, 7)
    b = q.empirical_precision("entangled", 4, 0.3, 100, 50, 7)
    assert a == b
    assert a["analytic_epsilon"] == pytest.approx(0.025)


def test_run_command():
    text = "X = 100\nY = 10\nZ = 1\nepsilon = 0.01\nn_from = 2\nn_to = 30\n"
    code, csv, _ = q.run_command("scan", text)
    assert code == 0
    assert csv.startswith("n,R1,R2,P2,C1,C2,ratio\n")
    assert csv.rstrip("\n").endswith("# window: n_min=11 n_max=open")
    with pytest.raises(q.ConfigError):
        q.run_command("scan", "Q = 3\n")
