import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussact.activation import (
    InputFamilyParams,
    SearchConfig,
    activation_difference_map,
    activation_objective,
    fold_into_box,
    input_family,
    optimize_activation,
    start_lattice,
)
from gaussact.bounds import BoundKind, max_coherent_information, q_upper
from gaussact.channels import PhaseInsensitiveSpec, is_ppt_parameter
from gaussact.symplectic import is_physical

FAST = SearchConfig(starts=1, max_iters=150)
HALF = PhaseInsensitiveSpec.attenuator(0.5, 0.0)


def test_input_family_vacuum():
    assert np.allclose(input_family(InputFamilyParams(1, 1, 1)), np.eye(6))


def test_input_family_mode_one_diagonal():
    g = input_family((2, 1, 1))
    assert np.allclose(np.diag(g)[:2], 17 / 8)
    assert np.allclose(g[:4, 4:], 0)


def test_input_family_example_physical():
    g = input_family((1.5, 2, 1.2))
    assert np.allclose(g, g.T)
    assert is_physical(g)


@settings(max_examples=100, deadline=None)
@given(st.floats(1, 10), st.floats(1, 10), st.floats(1, 10))
def test_input_family_always_physical(x, y, z):
    assert is_physical(input_family((x, y, z)))


def test_input_params_reject_below_one():
    with pytest.raises(ValueError):
        InputFamilyParams(0.9, 1, 1)


@pytest.mark.parametrize("t", [0.5, 0.9])
def test_objective_vacuum_input_zero(t):
    spec = PhaseInsensitiveSpec.attenuator(t, 0.0)
    assert abs(activation_objective(spec, (1, 1, 1), (3.3, 1.94))) < 1e-7


def test_objective_at_known_witness():
    # optimum found by the default search at the 50/50 quantum-limited attenuator
    val = activation_objective(HALF, (2.143963704833093, 1.97149311105916, 10.0), (3.3, 1.94))
    assert val == pytest.approx(0.0842409, abs=1e-6)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(s_max=0.5)
    with pytest.raises(ValueError):
        SearchConfig(starts=0)
    with pytest.raises(ValueError):
        SearchConfig(ppt_grid=((0.5, 2.0),))


def test_default_pairs_are_ppt():
    cfg = SearchConfig()
    assert cfg.pairs() == ((cfg.ppt_a, cfg.ppt_b),)
    assert all(is_ppt_parameter(a, b) for a, b in cfg.ppt_grid)
    assert SearchConfig(optimize_ppt=True).pairs() == cfg.ppt_grid


def test_start_lattice():
    pts = start_lattice(3, 27, 2.0)
    assert len(pts) == 27
    assert {tuple(p) for p in pts} >= {(0.0, 0.0, 0.0), (2.0, 2.0, 2.0), (1.0, 1.0, 1.0)}
    assert len(start_lattice(3, 10, 1.0)) == 10
    assert np.allclose(start_lattice(3, 1, 2.0)[0], 1.0)


@given(st.floats(-50, 50))
def test_fold_into_box(u):
    v = float(fold_into_box(np.array([u]), 2.0)[0])
    assert -1e-9 <= v <= 2.0 + 1e-9


def test_fold_reflects():
    assert np.allclose(fold_into_box(np.array([-0.5, 2.5, 4.5]), 2.0), [0.5, 1.5, 0.5])


def test_optimize_half_attenuator_superactivates():
    res = optimize_activation(HALF)
    assert res.bound_value == 0 == q_upper(0.5, 0)
    assert res.ic_combined > 0.08
    assert res.certified
    assert res.delta == res.ic_combined - res.bound_value
    assert res.bound_kind is BoundKind.Q_UPPER


def test_optimize_is_deterministic():
    a = optimize_activation(HALF, FAST)
    b = optimize_activation(HALF, FAST)
    assert a.ic_combined == b.ic_combined
    assert a.best_params == b.best_params


def test_best_params_within_box():
    res = optimize_activation(PhaseInsensitiveSpec.attenuator(0.6, 0.02), FAST)
    assert all(1 <= s <= FAST.s_max + 1e-9 for s in res.best_params.as_tuple())


def test_non_ppt_pairs_skipped():
    cfg = SearchConfig(starts=1, max_iters=50, optimize_ppt=True, ppt_grid=((2.0, 1.0), (3.3, 1.94)))
    res = optimize_activation(HALF, cfg)
    assert res.ppt_ab == (3.3, 1.94)
    assert "non-ppt-skipped:2,1" in res.flags


def test_only_non_ppt_pairs_raise():
    with pytest.raises(ValueError):
        optimize_activation(HALF, SearchConfig(ppt_a=2.0, ppt_b=1.0))


def test_non_ppt_allowed_when_requested():
    res = optimize_activation(HALF, SearchConfig(starts=1, max_iters=50, ppt_a=2.0, ppt_b=1.0, require_ppt=False))
    assert res.flags == ("non-ppt:2,1",)


def test_cimax_bound_for_amplifier():
    spec = PhaseInsensitiveSpec.amplifier(2.0, 0.0)
    res = optimize_activation(spec, FAST, BoundKind.MAX_COHERENT_INFO)
    assert res.bound_value == pytest.approx(max_coherent_information(spec))
    assert not res.certified


def test_qu_bound_rejects_amplifier():
    with pytest.raises(ValueError):
        optimize_activation(PhaseInsensitiveSpec.amplifier(2.0), FAST)


def test_difference_map_keeps_order_and_errors():
    specs = [HALF, PhaseInsensitiveSpec.amplifier(1.5, 0.0)]
    out = activation_difference_map(specs, SearchConfig(starts=1, max_iters=30))
    assert out[0].spec == HALF
    assert isinstance(out[1], ValueError)


def test_low_transmissivity_activation_on_quantum_limited_edge():
    # tau < 0.2 activation survives at N = 0; thermal noise destroys it quickly
    res = optimize_activation(PhaseInsensitiveSpec.attenuator(0.19, 0.0))
    assert res.certified
    assert res.delta == pytest.approx(0.00102, abs=2e-4)
