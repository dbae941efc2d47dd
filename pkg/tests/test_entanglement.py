"""Tests for concurrence and event detection."""

import numpy as np
import pytest

from emunruh.entanglement import (
    EntanglementEvents,
    concurrence_witness,
    concurrence_wootters,
    concurrence_x,
    detect_events,
    events_from_series,
    refine_minima,
)
from emunruh.errors import InvalidStateError
from emunruh.lindblad import StateTrajectory, XState, evolve, initial_state, to_product_matrix


def _random_x_state(rng):
    gg, ee, aa, ss = rng.dirichlet(np.ones(4))
    as_ = rng.uniform(0.0, 0.95) * np.sqrt(aa * ss) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    ge = rng.uniform(0.0, 0.95) * np.sqrt(gg * ee) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return XState(gg, ee, aa, ss, as_, np.conj(as_), ge, np.conj(ge))


def test_concurrence_of_reference_states():
    assert concurrence_x(initial_state("A")) == pytest.approx(1.0)
    assert concurrence_x(initial_state("S")) == pytest.approx(1.0)
    assert concurrence_x(initial_state("BellGE")) == pytest.approx(1.0)
    assert concurrence_x(initial_state("E")) == 0.0
    mixed = XState(0.25, 0.25, 0.25, 0.25)
    assert concurrence_x(mixed) == 0.0
    assert concurrence_witness(mixed) == pytest.approx(-0.5)


@pytest.mark.parametrize("p", [0.1, 0.25, 0.75, 0.9])
def test_concurrence_of_psi_states(p):
    assert concurrence_x(initial_state("Psi", p=p)) == pytest.approx(abs(1.0 - 2.0 * p))


def test_concurrence_x_is_vectorised():
    vectors = np.array([initial_state(s).to_vector() for s in ("A", "E", "BellGE")])
    np.testing.assert_allclose(concurrence_x(vectors), [1.0, 0.0, 1.0])


def test_x_formula_matches_wootters():
    rng = np.random.default_rng(7)
    for _ in range(200):
        state = _random_x_state(rng)
        rho = to_product_matrix(state)
        assert concurrence_x(state) == pytest.approx(concurrence_wootters(rho), abs=1e-10)


def test_wootters_reference_values():
    assert concurrence_wootters(to_product_matrix(initial_state("BellGE"))) == pytest.approx(1.0, abs=1e-6)
    product = np.zeros((4, 4))
    product[2, 2] = 1.0
    assert concurrence_wootters(product) == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(ValueError):
        concurrence_wootters(np.eye(2))
    with pytest.raises(InvalidStateError):
        concurrence_wootters(np.diag([1.5, -0.5, 0.0, 0.0]))


def test_negative_radicand_is_rejected():
    with pytest.raises(InvalidStateError):
        concurrence_x(XState(rho_GG=-0.5, rho_EE=1.5))


def test_sudden_death_and_revival():
    times = np.array([0.0, 1.0, 2.0, 3.0])
    events = events_from_series(times, np.array([0.5, 0.0, 0.1, 0.0]))
    assert events.death_time == pytest.approx(1.0, abs=1e-5)
    assert events.birth_time is None
    assert events.n_revivals == 1
    start, end = events.revival_intervals[0]
    assert start == pytest.approx(1.0, abs=1e-4)
    assert end == pytest.approx(3.0, abs=1e-4)
    assert not events.enhanced
    assert events.max_concurrence == 0.5 and events.arg_max_tau == 0.0


def test_revival_lasting_to_the_end():
    events = events_from_series(np.arange(4.0), np.array([0.5, 0.0, 0.1, 0.2]))
    assert events.revival_intervals == [(pytest.approx(1.00001), 3.0)]


def test_monotone_decay_has_death_only():
    events = events_from_series(np.arange(4.0), np.array([1.0, 0.5, 0.0, 0.0]))
    assert events.death_time == pytest.approx(2.0, abs=1e-5)
    assert events.n_revivals == 0


def test_delayed_birth():
    events = events_from_series(np.arange(4.0), np.array([0.0, 0.0, 0.2, 0.3]))
    assert events.birth_time == pytest.approx(1.0 + 1e-6 / 0.2)
    assert events.death_time is None
    assert events.enhanced
    assert events.to_dict()["revivals"] == []


def test_enhancement():
    events = events_from_series(np.arange(3.0), np.array([0.5, 0.6, 0.4]))
    assert events.enhanced
    assert events.max_concurrence == 0.6
    assert events.arg_max_tau == 1.0
    assert set(events.to_dict()) == {
        "death_time", "birth_time", "revivals", "max_concurrence", "arg_max_tau", "enhanced",
    }


def test_events_from_series_validates_input():
    with pytest.raises(ValueError):
        events_from_series(np.arange(3.0), np.arange(4.0))
    assert isinstance(events_from_series(np.array([0.0]), np.array([0.3])), EntanglementEvents)


def test_detect_events_on_trajectory(static_rates):
    traj = evolve(initial_state("S"), static_rates, times=np.linspace(0.0, 30.0, 301))
    events = detect_events(traj)
    assert events.max_concurrence == pytest.approx(1.0)
    assert events.arg_max_tau == 0.0
    assert events.death_time is not None


def test_refine_minima_never_raises_the_minimum(static_rates):
    coarse = evolve(initial_state("Psi", p=0.25), static_rates, times=np.linspace(0.0, 10.0, 21))
    refined = refine_minima(coarse, static_rates)
    assert set(coarse.times).issubset(set(refined.times))
    assert np.all(np.diff(refined.times) > 0)
    assert concurrence_x(refined.states).min() <= concurrence_x(coarse.states).min()


def test_refine_minima_finds_dip_between_samples(static_rates):
    """A zero touch hidden between two samples is resolved."""
    times = np.linspace(0.0, 30.0, 301)
    fine = evolve(initial_state("Psi", p=0.25), static_rates, times=times)
    c = concurrence_x(fine.states)
    k = int(np.argmin(c[1:-1])) + 1
    # drop the sample at the minimum so the dip lies between two samples
    keep = np.ones(times.size, dtype=bool)
    keep[k] = False
    sparse = StateTrajectory(times[keep], fine.states[keep])
    refined = refine_minima(sparse, static_rates)
    assert concurrence_x(refined.states).min() <= c[k] + 1e-9
