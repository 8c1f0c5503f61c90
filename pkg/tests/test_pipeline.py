import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomolift.pipeline import (ExperimentPlan, StateSpec, combine_three_step,
                               combine_two_step, run_plan, save_run_result,
                               uniform_allocation, with_method)
from tomolift.sampling import FrequencyTable


def _table(values, variant="f1"):
    return FrequencyTable(values=np.asarray(values, dtype=float), variant=variant)


def _plan(**kw):
    base = dict(n=2, state=StateSpec("cat"), N=900, R=0.5, seed=7)
    base.update(kw)
    return ExperimentPlan(**base)


# ------------------------------------------------------------------ builders

def test_state_specs_build():
    assert StateSpec("cat").build(2).shape == (4, 4)
    assert StateSpec("mixed").label() == "mixed"
    spec = StateSpec("random", rank=2, seed=5)
    a, b = spec.build(2), spec.build(2)
    assert (a == b).all()
    assert spec.label() == "random(rank=2,seed=5)"


def test_state_spec_file_roundtrip(tmp_path):
    from tomolift import states
    path = tmp_path / "state.mat"
    states.save_state_file(states.make_w_state(2), path)
    rho = StateSpec("file", path=str(path)).build(2)
    np.testing.assert_allclose(rho, states.make_w_state(2), atol=1e-15)
    with pytest.raises(ValueError):
        StateSpec("file", path=str(path)).build(3)


def test_state_spec_validation():
    with pytest.raises(ValueError):
        StateSpec("bogus").build(2)
    with pytest.raises(ValueError):
        StateSpec("random").build(2)
    with pytest.raises(ValueError):
        StateSpec("file").build(2)


def test_plan_validation():
    with pytest.raises(ValueError):
        _plan(N=5).validate()                    # below 3^n settings
    with pytest.raises(ValueError):
        _plan(R=1.0).validate()
    with pytest.raises(ValueError):
        _plan(R=0.9, R2=0.2, method="three_step").validate()
    with pytest.raises(ValueError):
        _plan(N=12, R=0.5).validate()            # round-1 budget 6 < 9 settings
    with pytest.raises(ValueError):
        _plan(method="bogus").validate()
    with pytest.raises(ValueError):
        _plan(method="three_step", R2=0.0).validate()   # empty round 3
    assert _plan().validate() is not None


# ---------------------------------------------------------------- allocation

def test_uniform_allocation_examples():
    np.testing.assert_array_equal(uniform_allocation(10, 3), [4, 3, 3])
    np.testing.assert_array_equal(uniform_allocation(90000, 9), [10000] * 9)
    np.testing.assert_array_equal(uniform_allocation(0, 3), [0, 0, 0])


def test_uniform_allocation_negative():
    with pytest.raises(ValueError):
        uniform_allocation(-1, 3)


@given(st.integers(0, 10**6), st.integers(1, 243))
@settings(max_examples=100, deadline=None)
def test_uniform_allocation_conserves(budget, n_settings):
    alloc = uniform_allocation(budget, n_settings)
    assert alloc.sum() == budget
    assert alloc.max() - alloc.min() <= 1


# ------------------------------------------------------------------ blending

def test_combine_two_step_scalar_example():
    # one setting, boost = 1: f3 = 0.5*f1 + 0.5*f2
    f1 = _table([[0.9, 0.1]])
    f2 = _table([[0.8, 1.2]], "f2")
    f3 = combine_two_step(f1, f2, 0.5, np.array([10]))
    np.testing.assert_allclose(f3.values, [[0.85, 0.65]])
    assert f3.variant == "f3"


def test_combine_two_step_boost():
    # allocation (3, 1): boosts are 1.5 and 0.5
    f1 = _table([[1.0, 0.0], [0.0, 1.0]])
    f2 = _table([[0.5, 0.5], [0.5, 0.5]], "f2")
    f3 = combine_two_step(f1, f2, 0.5, np.array([3, 1]))
    np.testing.assert_allclose(f3.values, [[0.875, 0.375], [0.125, 0.625]])


def test_combine_three_step_scalar_example():
    f1 = _table([[0.9, 0.1]])
    f2 = _table([[0.8, 1.2]], "f2")
    f4 = _table([[0.75, 0.25]], "f4")
    f5 = combine_three_step(f1, f2, f4, 0.5, 0.25, np.array([4]))
    np.testing.assert_allclose(f5.values, [[0.8375, 0.4125]])
    assert f5.variant == "f5"


@given(st.integers(0, 2**31 - 1), st.floats(0.05, 0.9),
       st.floats(0.0, 0.9))
@settings(max_examples=60, deadline=None)
def test_combine_matches_scalar_recomputation(seed, r, r2_frac):
    r2 = (1.0 - r) * r2_frac * 0.9
    rng = np.random.default_rng(seed)
    f1 = _table(rng.random((3, 2)))
    f2 = _table(rng.random((3, 2)), "f2")
    f4 = _table(rng.random((3, 2)), "f4")
    alloc = rng.integers(0, 20, size=3)
    if alloc.sum() == 0:
        alloc[0] = 1
    f3 = combine_two_step(f1, f2, r, alloc)
    f5 = combine_three_step(f1, f2, f4, r, r2, alloc)
    total = alloc.sum()
    for mu in range(3):
        boost = 3 * alloc[mu] / total
        for nu in range(2):
            expected3 = r * f1.values[mu, nu] + (1 - r) * f2.values[mu, nu] * boost
            expected5 = (r * f1.values[mu, nu]
                         + r2 * f2.values[mu, nu] * boost
                         + (1 - r - r2) * f4.values[mu, nu] * boost)
            assert f3.values[mu, nu] == pytest.approx(expected3, abs=1e-12)
            assert f5.values[mu, nu] == pytest.approx(expected5, abs=1e-12)


def test_combine_validation():
    f = _table([[0.5, 0.5]])
    with pytest.raises(ValueError):
        combine_two_step(f, f, 0.5, np.array([0]))
    with pytest.raises(ValueError):
        combine_three_step(f, f, f, 0.7, 0.3, np.array([1]))


# ---------------------------------------------------------------------- runs

@pytest.mark.parametrize("method", ["fixed", "two_step", "three_step"])
def test_oracle_runs_recover_state(method):
    plan = _plan(method=method, R2=0.25 if method == "three_step" else 0.0,
                 oracle=True)
    result = run_plan(plan)
    assert result.mse_final <= 1e-8
    assert result.plan.method == method


def test_budget_conservation_two_step():
    result = run_plan(_plan(method="two_step", N=913))
    spent = sum(int(a.sum()) for a in result.allocations.values())
    assert spent == 913
    assert int(result.allocations["round1"].sum()) == int(913 * 0.5)


def test_budget_conservation_three_step():
    result = run_plan(_plan(method="three_step", N=911, R=0.4, R2=0.3))
    alloc = result.allocations
    assert int(alloc["round1"].sum()) == int(911 * 0.4)
    assert int(alloc["round3"].sum()) == int(911 * 0.3)
    assert sum(int(a.sum()) for a in alloc.values()) == 911


def test_runs_deterministic():
    a = run_plan(_plan(method="two_step", seed=42))
    b = run_plan(_plan(method="two_step", seed=42))
    assert (a.rho_estimate == b.rho_estimate).all()
    assert a.mse_final == b.mse_final


def test_different_seeds_differ():
    a = run_plan(_plan(method="two_step", seed=1))
    b = run_plan(_plan(method="two_step", seed=2))
    assert a.mse_final != b.mse_final


def test_two_step_improves_on_interim_for_cat():
    result = run_plan(_plan(method="two_step", N=9000, seed=3))
    assert result.mse_stages["rho_E"] < result.mse_stages["rho_E0"]


def test_three_step_stage_outputs_present():
    result = run_plan(_plan(method="three_step", R=0.4, R2=0.3, seed=5))
    assert set(result.rho_stages) == {"rho_E0", "rho_E1", "rho_E"}
    assert set(result.frequencies) == {"f1", "f2", "f3", "f2_round3", "f4", "f5"}
    assert result.frequencies["f5"].variant == "f5"


def test_eq10_alt_changes_final_blend():
    kw = dict(method="three_step", R=0.4, R2=0.3, seed=9)
    base = run_plan(_plan(**kw))
    alt = run_plan(_plan(**kw, eq10_alt=True))
    assert not np.allclose(base.frequencies["f5"].values,
                           alt.frequencies["f5"].values)
    # rounds 1 and 2 are unaffected by the blend choice
    np.testing.assert_array_equal(base.frequencies["f1"].values,
                                  alt.frequencies["f1"].values)
    np.testing.assert_array_equal(base.frequencies["f2"].values,
                                  alt.frequencies["f2"].values)


def test_with_method():
    plan = _plan(method="fixed")
    assert with_method(plan, "two_step").method == "two_step"
    assert plan.method == "fixed"


def test_save_run_result(tmp_path):
    result = run_plan(_plan(method="two_step", seed=11))
    summary = save_run_result(result, tmp_path / "out")
    text = open(summary).read()
    pairs = dict(line.split(": ", 1) for line in text.splitlines())
    assert pairs["method"] == "two_step"
    assert float(pairs["mse_final"]) == result.mse_final
    assert len(pairs["allocation_round2"].split()) == 9
    from tomolift import states
    rho_e = states.load_state_file(tmp_path / "out" / "rho_E.mat")
    np.testing.assert_allclose(rho_e, result.rho_estimate, atol=1e-15)
    assert (tmp_path / "out" / "rho_T.mat").exists()
