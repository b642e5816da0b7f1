import math

import numpy as np
import pytest

import evoalg as ev
from evoalg.cells import PairCell
from evoalg.errors import BudgetError, ValidationError
from evoalg.limits import TailCell, VolumeScheme


def const(state):
    return TailCell(state)


def flipped(state, other, coord=0):
    return TailCell(state, ((coord, other),))


def brute_box_measure(radius, beta, coupling=1.0):
    """Independent Boltzmann weights on the one-dimensional box."""
    sites = 2 * radius + 1
    masses = {}
    total = 0.0
    for idx in range(2**sites):
        digits = [(idx >> v) & 1 for v in range(sites)]
        energy = -coupling * sum(
            1 for v in range(sites - 1) if digits[v] == digits[v + 1]
        )
        w = math.exp(-beta * energy)
        masses[tuple(digits)] = w
        total += w
    return {k: v / total for k, v in masses.items()}


def test_diagonal_pair_coefficient_is_one():
    scheme = VolumeScheme(1, (1, 2), 2, 1.0, 1.0)
    value = ev.finite_volume_coeff(scheme, 1, (const(1), const(1)), (const(1), const(1)))
    assert value == 1.0


def test_coefficient_matches_brute_force_enumeration():
    beta = 1.0
    scheme = VolumeScheme(1, (1,), 2, 1.0, beta)
    value = ev.finite_volume_coeff(scheme, 1, (const(1), const(2)), (const(1), const(1)))
    masses = brute_box_measure(1, beta)
    p1 = masses[(0, 0, 0)]
    p2 = masses[(1, 1, 1)]
    assert value == pytest.approx(p1**2 / (p1 + p2) ** 2, abs=1e-14)


def test_infinite_temperature_matches_uniform_values():
    hot = VolumeScheme(1, (1,), 2, 1.0, 0.0)
    value = ev.finite_volume_coeff(hot, 1, (const(1), const(2)), (const(1), const(2)))
    # the two constant cells carry equal mass, so the ratio is exactly 1/4
    assert value == pytest.approx(0.25, abs=1e-14)


def test_coefficient_outside_children_is_zero():
    scheme = VolumeScheme(1, (1,), 2, 1.0, 2.0)
    value = ev.finite_volume_coeff(scheme, 1, (const(1), const(1)), (const(2), const(2)))
    assert value == 0.0


def test_sequence_of_diagonal_pair_is_constant_one():
    scheme = VolumeScheme(1, (1, 2, 3), 2, 1.0, 5.0)
    seq = ev.coefficient_sequence(scheme, (const(1), const(1)), (const(1), const(1)))
    assert seq.values == (1.0, 1.0, 1.0)
    assert seq.converged and seq.limit_estimate == 1.0


def test_sequence_across_ground_states_vanishes():
    scheme = VolumeScheme(1, (1, 2, 3), 2, 1.0, 5.0)
    seq = ev.coefficient_sequence(scheme, (const(1), const(1)), (const(2), const(2)))
    assert seq.values == (0.0, 0.0, 0.0)
    assert seq.converged and seq.limit_estimate == 0.0


def test_sequence_for_single_flip_closed_form():
    beta = 2.0
    scheme = VolumeScheme(1, (1, 2, 3), 2, 1.0, beta)
    seq = ev.coefficient_sequence(
        scheme, (const(1), flipped(1, 2)), (const(1), const(1))
    )
    # flipping the origin breaks both of its edges on every one of these boxes
    expected = 1.0 / (1.0 + math.exp(-2 * beta)) ** 2
    for value in seq.values:
        assert value == pytest.approx(expected, abs=1e-12)
    assert seq.converged


def test_row_sum_over_pair_children_is_one():
    scheme = VolumeScheme(1, (1,), 2, 1.0, 1.5)
    box = scheme.box(1)
    space = ev.StateSpace(2)
    phi = (const(1), const(2))
    restricted = PairCell(phi[0].restrict(box, 2), phi[1].restrict(box, 2))
    kids = ev.children_set(restricted, ev.components(box.graph), space)
    total = 0.0
    for a in kids:
        for b in kids:
            psi = (
                TailCell(1, tuple(zip(box.sites, a.states))),
                TailCell(1, tuple(zip(box.sites, b.states))),
            )
            total += ev.finite_volume_coeff(scheme, 1, phi, psi)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_state_swap_symmetry():
    scheme = VolumeScheme(1, (1, 2), 2, 1.0, 3.0)
    forward = ev.finite_volume_coeff(scheme, 2, (const(1), const(2)), (const(1), const(1)))
    swapped = ev.finite_volume_coeff(scheme, 2, (const(2), const(1)), (const(2), const(2)))
    assert forward == pytest.approx(swapped, abs=1e-12)


def test_coefficients_stay_in_unit_interval():
    scheme = VolumeScheme(1, (1, 2), 3, 1.0, 2.0)
    pairs = [
        (const(1), const(2)),
        (const(1), flipped(1, 3)),
        (const(2), const(2)),
    ]
    for phi in pairs:
        for psi in pairs:
            for radius in scheme.radii:
                value = ev.finite_volume_coeff(scheme, radius, phi, psi)
                assert 0.0 <= value <= 1.0


def test_ground_state_mass_grows_with_beta():
    masses = []
    for beta in (0.0, 0.5, 1.0, 2.0, 5.0):
        scheme = VolumeScheme(1, (2,), 2, 1.0, beta)
        mu = scheme.measure(2)
        masses.append(mu.mass(const(1).restrict(scheme.box(2), 2)))
    assert all(b >= a for a, b in zip(masses, masses[1:]))


def test_low_temp_report_masses_monotone_in_beta():
    report = ev.low_temp_limit_algebras(1, 2, [1, 2, 3], [0.5, 2.0, 5.0])
    assert report["distinct_generators"]
    for candidate in report["candidates"]:
        per_beta = candidate["masses"]
        for r in range(len(report["radii"])):
            column = [per_beta[b][r] for b in range(len(report["betas"]))]
            assert all(y >= x for x, y in zip(column, column[1:]))


def test_low_temp_three_states_has_three_candidates():
    report = ev.low_temp_limit_algebras(1, 3, [1, 2], [1.0, 4.0])
    assert len(report["candidates"]) == 3
    assert report["distinct_generators"]


def test_low_temp_infinite_temperature_is_symmetric():
    report = ev.low_temp_limit_algebras(1, 2, [1, 2], [0.0])
    first, second = report["candidates"]
    assert np.allclose(first["masses"], second["masses"])


def test_budget_rejected():
    with pytest.raises(BudgetError):
        VolumeScheme(2, (1, 2), 2, 1.0, 1.0)
    with pytest.raises(BudgetError):
        VolumeScheme(1, (10,), 2, 1.0, 1.0)


def test_pattern_must_fit_in_box():
    scheme = VolumeScheme(1, (1,), 2, 1.0, 1.0)
    with pytest.raises(ValidationError):
        ev.finite_volume_coeff(scheme, 1, (const(1), flipped(1, 2, coord=5)), (const(1), const(1)))


def test_radius_must_belong_to_scheme():
    scheme = VolumeScheme(1, (1, 3), 2, 1.0, 1.0)
    with pytest.raises(ValidationError):
        ev.finite_volume_coeff(scheme, 2, (const(1), const(1)), (const(1), const(1)))


def test_scheme_validates_radii():
    with pytest.raises(ValidationError):
        VolumeScheme(1, (2, 2), 2, 1.0, 1.0)
    with pytest.raises(ValidationError):
        VolumeScheme(1, (), 2, 1.0, 1.0)
