"""Closed-form swap amplitudes: special angles, norm, piecewise protocol."""

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from phonmem.rwa import (
    RwaAmplitudes,
    protocol_amplitudes,
    rwa_retrieval,
    rwa_storage,
)

ALPHA = cmath.exp(0.3j) * math.cos(0.7)
BETA = cmath.exp(-1.1j) * math.sin(0.7)
OMEGA = 0.27633663951048998


def test_storage_start_is_initial_state():
    amps = rwa_storage(ALPHA, BETA, OMEGA, 0.0)
    assert amps.c00 == ALPHA
    assert amps.c01 == 0.0
    assert amps.c10 == BETA


def test_half_swap_transfers_excitation():
    amps = rwa_storage(ALPHA, BETA, OMEGA, math.pi / OMEGA)
    assert amps.c01 == pytest.approx(BETA, abs=1e-15)
    assert abs(amps.c10) < 1e-15
    assert amps.c00 == ALPHA


def test_full_cycle_flips_sign():
    amps = rwa_storage(ALPHA, BETA, OMEGA, 2.0 * math.pi / OMEGA)
    assert amps.c10 == pytest.approx(-BETA, abs=1e-15)
    assert abs(amps.c01) < 1e-15


def test_quarter_swap_splits_evenly():
    amps = rwa_storage(0.0, 1.0, OMEGA, 0.5 * math.pi / OMEGA)
    assert abs(amps.c01) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert abs(amps.c10) == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_retrieval_recovers_plus_beta():
    # three half-periods: the sign flip of a single half-swap is undone
    amps = rwa_retrieval(ALPHA, BETA, OMEGA, 3.0 * math.pi / OMEGA)
    assert amps.c10 == pytest.approx(BETA, abs=1e-14)
    assert abs(amps.c01) < 1e-14


def test_single_half_swap_retrieval_negates():
    amps = rwa_retrieval(ALPHA, BETA, OMEGA, math.pi / OMEGA)
    assert amps.c10 == pytest.approx(-BETA, abs=1e-15)


@pytest.mark.parametrize("func", [rwa_storage, rwa_retrieval])
@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_rejects_nonpositive_frequency(func, bad):
    with pytest.raises(ValueError):
        func(ALPHA, BETA, bad, 1.0)


@given(theta=st.floats(0.0, math.pi),
       phi=st.floats(0.0, 2.0 * math.pi),
       dt=st.floats(0.0, 200.0))
def test_storage_preserves_norm(theta, phi, dt):
    a = math.cos(theta / 2.0)
    b = cmath.exp(1j * phi) * math.sin(theta / 2.0)
    amps = rwa_storage(a, b, OMEGA, dt)
    assert amps.norm == pytest.approx(1.0, abs=1e-12)


@given(dt=st.floats(0.0, 200.0))
def test_retrieval_preserves_norm(dt):
    amps = rwa_retrieval(ALPHA, BETA, OMEGA, dt)
    assert amps.norm == pytest.approx(1.0, abs=1e-12)


class TestProtocolPiecewise:
    T_STORE = (3.0, 3.0 + math.pi / OMEGA)
    T_RETRIEVE = (20.0, 20.0 + 3.0 * math.pi / OMEGA)

    def at(self, t):
        return protocol_amplitudes(ALPHA, BETA, OMEGA, t,
                                   self.T_STORE, self.T_RETRIEVE)

    def test_frozen_before_storage(self):
        for t in (0.0, 1.5, 2.999):
            amps = self.at(t)
            assert (amps.c00, amps.c01, amps.c10) == (ALPHA, 0.0, BETA)

    def test_matches_storage_inside_first_dwell(self):
        t = self.T_STORE[0] + 4.0
        want = rwa_storage(ALPHA, BETA, OMEGA, 4.0)
        got = self.at(t)
        assert got == want

    def test_frozen_during_park(self):
        stored = rwa_storage(ALPHA, BETA, OMEGA,
                             self.T_STORE[1] - self.T_STORE[0])
        for t in (self.T_STORE[1] + 1e-9, 17.0, self.T_RETRIEVE[0] - 1e-9):
            assert self.at(t) == stored

    def test_matches_retrieval_inside_second_dwell(self):
        stored = rwa_storage(ALPHA, BETA, OMEGA,
                             self.T_STORE[1] - self.T_STORE[0])
        t = self.T_RETRIEVE[0] + 7.0
        want = rwa_retrieval(stored.c00, stored.c01, OMEGA, 7.0)
        assert self.at(t) == want

    def test_frozen_after_retrieval(self):
        final = self.at(self.T_RETRIEVE[1])
        assert self.at(self.T_RETRIEVE[1] + 50.0) == final

    def test_ideal_protocol_restores_qubit(self):
        amps = self.at(self.T_RETRIEVE[1])
        assert amps.c00 == pytest.approx(ALPHA, abs=1e-14)
        assert amps.c10 == pytest.approx(BETA, abs=1e-13)
        assert abs(amps.c01) < 1e-13


def test_amplitudes_norm_property():
    amps = RwaAmplitudes(c00=0.6, c01=0.0, c10=0.8j)
    assert amps.norm == pytest.approx(1.0, abs=1e-15)
