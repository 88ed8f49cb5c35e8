"""Counter-based random number streams.

Every random quantity in the package is a pure function of
``(seed, stream, index)``: a 64-bit seed, a stream id (for example a vertex
label), and a draw index within the stream.  Draws are random-access --
there is no sequential generator state -- so any work partition over
vertices, candidate edges, or replicas produces identical output.

The construction is a keyed splitmix64 counter: the (seed, stream) pair is
hashed into a stream state, and draw ``i`` applies the splitmix64 finalizer
to ``state + (i+1)*GOLDEN``.  Three synchronised implementations exist:
masked Python ints (scalar), numpy uint64 arrays (vectorised), and a
numba-jitted scalar used inside kernels.
"""

import numpy as np

from .backend import njit

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_SEED_MUL = 0xA24BAED4963EE407
_SEED_ADD = 0x9FB21C651E98DF25
_STREAM_MUL = 0xD6E8FEB86659FD93
_STREAM_ADD = 0xC2B2AE3D27D4EB4F

_INV53 = 2.0**-53


def mix64(z: int) -> int:
    """splitmix64 finalizer on masked Python ints."""
    z &= MASK
    z ^= z >> 30
    z = (z * _M1) & MASK
    z ^= z >> 27
    z = (z * _M2) & MASK
    return z ^ (z >> 31)


def stream_state(seed: int, stream: int) -> int:
    a = mix64((seed * _SEED_MUL + _SEED_ADD) & MASK)
    b = mix64((stream * _STREAM_MUL + _STREAM_ADD) & MASK)
    return mix64(a ^ b)


def u64_at(seed: int, stream: int, index: int) -> int:
    return mix64((stream_state(seed, stream) + (index + 1) * GOLDEN) & MASK)


def unit_at(seed: int, stream: int, index: int) -> float:
    """Uniform draw in [0, 1)."""
    return (u64_at(seed, stream, index) >> 11) * _INV53


def unit_open_at(seed: int, stream: int, index: int) -> float:
    """Uniform draw in (0, 1], for inverse-transform sampling."""
    return ((u64_at(seed, stream, index) >> 11) + 1) * _INV53


def unit_for_state(state: int, index: int) -> float:
    return (mix64((state + (index + 1) * GOLDEN) & MASK) >> 11) * _INV53


def unit_open_for_state(state: int, index: int) -> float:
    return ((mix64((state + (index + 1) * GOLDEN) & MASK) >> 11) + 1) * _INV53


# -- vectorised (numpy uint64) ------------------------------------------------

_U = np.uint64


def _mix64_vec(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> _U(30))
    z = z * _U(_M1)
    z = z ^ (z >> _U(27))
    z = z * _U(_M2)
    return z ^ (z >> _U(31))


def u64s_at(seed: int, stream: int, indices: np.ndarray) -> np.ndarray:
    state = _U(stream_state(seed, stream))
    idx = indices.astype(np.uint64, copy=False)
    return _mix64_vec(state + (idx + _U(1)) * _U(GOLDEN))


def units_at(seed: int, stream: int, indices: np.ndarray) -> np.ndarray:
    return (u64s_at(seed, stream, indices) >> _U(11)).astype(np.float64) * _INV53


def units_open_at(seed: int, stream: int, indices: np.ndarray) -> np.ndarray:
    return ((u64s_at(seed, stream, indices) >> _U(11)) + _U(1)).astype(np.float64) * _INV53


def units(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    return units_at(seed, stream, np.arange(start, start + count, dtype=np.uint64))


def stream_states_vec(seed: int, streams: np.ndarray) -> np.ndarray:
    a = _U(mix64((seed * _SEED_MUL + _SEED_ADD) & MASK))
    b = _mix64_vec(streams.astype(np.uint64) * _U(_STREAM_MUL) + _U(_STREAM_ADD))
    return _mix64_vec(a ^ b)


def units_for_states(states: np.ndarray, indices: np.ndarray, open_interval: bool = False) -> np.ndarray:
    z = _mix64_vec(states + (indices.astype(np.uint64) + _U(1)) * _U(GOLDEN))
    if open_interval:
        return ((z >> _U(11)) + _U(1)).astype(np.float64) * _INV53
    return (z >> _U(11)).astype(np.float64) * _INV53


# -- numba scalar kernels ------------------------------------------------------

_NB_M1 = _U(_M1)
_NB_M2 = _U(_M2)
_NB_GOLDEN = _U(GOLDEN)
_NB_SEED_MUL = _U(_SEED_MUL)
_NB_SEED_ADD = _U(_SEED_ADD)
_NB_STREAM_MUL = _U(_STREAM_MUL)
_NB_STREAM_ADD = _U(_STREAM_ADD)


@njit
def nb_mix64(z):
    z = z ^ (z >> _U(30))
    z = z * _NB_M1
    z = z ^ (z >> _U(27))
    z = z * _NB_M2
    return z ^ (z >> _U(31))


@njit
def nb_stream_state(seed, stream):
    a = nb_mix64(seed * _NB_SEED_MUL + _NB_SEED_ADD)
    b = nb_mix64(stream * _NB_STREAM_MUL + _NB_STREAM_ADD)
    return nb_mix64(a ^ b)


@njit
def nb_unit_at(state, index):
    z = nb_mix64(state + (index + _U(1)) * _NB_GOLDEN)
    return np.float64(z >> _U(11)) * _INV53


@njit
def nb_unit_open_at(state, index):
    z = nb_mix64(state + (index + _U(1)) * _NB_GOLDEN)
    return np.float64((z >> _U(11)) + _U(1)) * _INV53
