"""Monte Carlo layer: determinism, shared draws, agreement with exact values."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import numpy as np
import pytest

from liemoments.config import DEFAULT_TOLERANCES
from liemoments.errors import DegeneracyError
from liemoments.groups import GroupSpec
from liemoments.montecarlo import (
    CharacterProductObservable,
    MCEstimate,
    PhiObservable,
    TraceProductObservable,
    TwistedObservable,
    TwistedPhiObservable,
    estimate,
    estimate_many,
    estimate_ratio,
    sample_values,
)
from liemoments.partitions import Partition
from liemoments.szego import FourierData, expect_phi_series

P = Partition.parse

GROUPS = [GroupSpec.sp(4), GroupSpec.so_even(4), GroupSpec.so_odd(4)]


def test_thread_count_is_invisible():
    # 9000 samples spans three chunks, so the pool actually splits work
    G = GroupSpec.so_even(3)
    obs = [TraceProductObservable(P("2")), TraceProductObservable(P("1,1"))]
    a = sample_values(G, obs, 9000, seed=42, threads=1)
    b = sample_values(G, obs, 9000, seed=42, threads=3)
    assert a.shape == (2, 9000)
    assert np.array_equal(a, b)


def test_seed_changes_values():
    G = GroupSpec.sp(2)
    obs = [TraceProductObservable(P("1"))]
    a = sample_values(G, obs, 200, seed=1)
    b = sample_values(G, obs, 200, seed=2)
    assert not np.array_equal(a, b)


@pytest.mark.parametrize(
    "G, expected",
    [(GroupSpec.sp(4), -1.0), (GroupSpec.so_even(4), 1.0), (GroupSpec.so_odd(4), 1.0)],
    ids=str,
)
def test_second_trace_moment(G, expected):
    e = estimate(G, TraceProductObservable(P("2")), 20000, seed=5)
    assert isinstance(e, MCEstimate)
    assert e.samples == 20000 and e.seed == 5
    assert abs(e.mean - expected) < 5 * e.stderr


def test_twisted_estimate_matches_exact():
    # E[chi_(1) tr(g^2) tr(g)] = -1 on the symplectic side, +1 orthogonal
    e = estimate(GroupSpec.sp(4), TwistedObservable(P("1"), P("2,1")), 20000, seed=7)
    assert abs(e.mean + 1.0) < 5 * e.stderr
    e = estimate(GroupSpec.so_odd(4), TwistedObservable(P("1"), P("2,1")), 20000, seed=7)
    assert abs(e.mean - 1.0) < 5 * e.stderr


def test_estimate_many_equals_single():
    # shared draws: joint run must reproduce the single-observable runs
    # bit for bit when the observables need the same trace powers
    G = GroupSpec.sp(3)
    a = TraceProductObservable(P("2"))
    b = TraceProductObservable(P("2,1"))
    joint = estimate_many(G, [a, b], 500, seed=9)
    assert joint[0] == estimate(G, a, 500, seed=9)
    assert joint[1] == estimate(G, b, 500, seed=9)


def test_ratio_of_identical_observables():
    G = GroupSpec.so_odd(3)
    obs = TraceProductObservable(P("1,1"))
    r = estimate_ratio(G, obs, obs, 500, seed=3)
    assert r.ratio == 1.0
    assert r.stderr < 1e-12


def test_ratio_against_independent_means():
    G = GroupSpec.sp(3)
    num = TraceProductObservable(P("2"))
    den = TraceProductObservable(P("1,1"))
    r = estimate_ratio(G, num, den, 4000, seed=13)
    vals = sample_values(G, [num, den], 4000, seed=13)
    assert r.ratio == pytest.approx(float(np.mean(vals[0]) / np.mean(vals[1])))
    assert r.stderr > 0.0


def test_phi_estimate_matches_series():
    f = FourierData({1: Fraction(1, 2)})
    G = GroupSpec.sp(6)
    value, tail = expect_phi_series(G, P(""), f, 6)
    assert value == Fraction(3481, 3072)
    e = estimate(G, PhiObservable(f), 10000, seed=5)
    # truncation at weight 6 leaves a real gap, small for these coefficients
    assert abs(e.mean - float(value)) < 5 * e.stderr + 0.01
    assert tail > 0.0


def test_twisted_phi_ratio_recovers_coefficient():
    # E[chi_(1) Phi] / E[Phi] tends to c_1 as the rank grows
    f = FourierData({1: 0.3})
    G = GroupSpec.so_even(8)
    r = estimate_ratio(
        G, TwistedPhiObservable(P("1"), f), PhiObservable(f), 20000, seed=17
    )
    assert abs(r.ratio - 0.3) < 5 * r.stderr + 0.02


def test_character_orthonormality():
    G = GroupSpec.sp(4)
    probes = [
        (CharacterProductObservable(P("1"), P("1")), 1.0),
        (CharacterProductObservable(P("2"), P("2")), 1.0),
        (CharacterProductObservable(P("1"), P("2")), 0.0),
        (CharacterProductObservable(P("2"), P("1,1")), 0.0),
    ]
    results = estimate_many(G, [p for p, _ in probes], 20000, seed=11)
    for (probe, expected), e in zip(probes, results):
        assert abs(e.mean - expected) < 5 * e.stderr, probe.label


def test_observable_labels():
    assert TraceProductObservable(P("2,1")).label == "trace-product[2,1]"
    assert TwistedObservable(P("1"), P("2")).characters() == (P("1"),)
    assert CharacterProductObservable(P("1"), P("1")).characters() == (P("1"),)
    assert CharacterProductObservable(P("1"), P("2")).characters() == (P("1"), P("2"))
    assert PhiObservable(FourierData({3: 0.1})).max_power() == 3
    assert PhiObservable(FourierData({})).max_power() == 0


def test_too_few_samples():
    with pytest.raises(ValueError):
        estimate(GroupSpec.sp(2), TraceProductObservable(P("1")), 99, seed=0)


def test_stable_group_rejected():
    with pytest.raises(ValueError):
        estimate(GroupSpec.sp(None), TraceProductObservable(P("1")), 500, seed=0)


def test_label_longer_than_rank():
    with pytest.raises(ValueError):
        estimate(GroupSpec.sp(2), TwistedObservable(P("1,1,1"), P("1")), 500, seed=0)


def test_impossible_tolerance_aborts():
    # a trace-imag tolerance below zero marks every draw degenerate, so the
    # redraw loop must exhaust its rounds and abort instead of spinning
    tol = dataclasses.replace(DEFAULT_TOLERANCES, trace_imag=-1.0)
    with pytest.raises(DegeneracyError):
        estimate(
            GroupSpec.sp(2),
            TraceProductObservable(P("1")),
            200,
            seed=0,
            tolerances=tol,
        )
