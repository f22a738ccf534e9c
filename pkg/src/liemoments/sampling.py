"""Haar-distributed sampling and numerical evaluation on the compact groups.

Everything here is batch-first: matrices are drawn and processed in stacks
with vectorized linear algebra, and each sample's randomness comes from a
counter-based generator keyed by (seed, sample index), so a sample is a
pure function of those two integers no matter how work is scheduled.

Constructions:

  SO(m): QR of a real Gaussian matrix with the R-diagonal sign correction
  (multiply each column of Q by the sign of the matching R diagonal entry),
  which gives Haar on O(m); determinant -1 draws are pushed into SO(m) by
  swapping the first two columns, a measure-preserving right translation.

  Sp(2n): n complex Gaussian columns of height 2n orthonormalized together
  with their quaternionic partners T(v) = J conj(v), J = [[0,-I],[I,0]].
  A unitary matrix whose columns come in (v, J conj v) pairs commutes with
  the antiunitary map x -> J conj(x), and that is equivalent to the
  symplectic condition g J g^T = J for this J, so no basis change is needed
  afterwards.  Orthogonalization is two-pass classical Gram-Schmidt, whose
  residuals are far below the 1e-10 validation threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DegeneracyError
from .groups import Family, GroupSpec
from .partitions import Partition
from .szego import FourierData

_MASK64 = (1 << 64) - 1


def rng_for_sample(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for one sample: Philox keyed by (seed, index)."""
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


# ---------------------------------------------------------------------------
# matrix construction


def _so_batch(m: int, rngs) -> np.ndarray:
    a = np.stack([rng.standard_normal((m, m)) for rng in rngs])
    q, r = np.linalg.qr(a)
    d = np.sign(np.diagonal(r, axis1=1, axis2=2)).copy()
    d[d == 0] = 1.0  # zero diagonal has probability 0; keep the column
    q = q * d[:, None, :]
    neg = np.linalg.det(q) < 0
    if np.any(neg):
        q[neg] = q[neg][:, :, _swap_first_two(m)]
    return q


def _swap_first_two(m: int) -> np.ndarray:
    perm = np.arange(m)
    perm[0], perm[1] = 1, 0
    return perm


def _quaternion_partner(v: np.ndarray) -> np.ndarray:
    """Apply x -> J conj(x) columnwise; v has shape (batch, 2n)."""
    n = v.shape[-1] // 2
    out = np.empty_like(v)
    out[..., :n] = -np.conj(v[..., n:])
    out[..., n:] = np.conj(v[..., :n])
    return out


def _sp_batch(n: int, rngs) -> np.ndarray:
    b = len(rngs)
    dim = 2 * n
    v = np.empty((b, dim, n), dtype=np.complex128)
    for idx, rng in enumerate(rngs):
        v[idx] = rng.standard_normal((dim, n)) + 1j * rng.standard_normal((dim, n))
    g = np.zeros((b, dim, dim), dtype=np.complex128)
    for k in range(n):
        col = v[:, :, k]
        for _ in range(2):  # second pass scrubs the first pass's rounding
            if k > 0:
                basis = np.concatenate((g[:, :, :k], g[:, :, n : n + k]), axis=2)
                overlaps = np.einsum("bij,bi->bj", np.conj(basis), col)
                col = col - np.einsum("bij,bj->bi", basis, overlaps)
        norm = np.linalg.norm(col, axis=1, keepdims=True)
        # norm ~ 0 would mean 2k Gaussian vectors were linearly dependent
        # (probability 0); division by a denormal would still be caught by
        # the unitarity residual check downstream.
        col = col / norm
        g[:, :, k] = col
        g[:, :, n + k] = _quaternion_partner(col)
    return g


def sample_matrices(G: GroupSpec, rngs) -> np.ndarray:
    """Draw one matrix per generator, stacked on axis 0."""
    if G.is_stable:
        raise ValueError("cannot sample the stable group; pick a finite rank")
    if G.family is Family.SP:
        return _sp_batch(G.rank, rngs)
    return _so_batch(G.matrix_size, rngs)


# ---------------------------------------------------------------------------
# single-sample interface


class HaarSample:
    """One group element with cached trace powers and validation residuals."""

    __slots__ = ("group", "matrix", "_powers", "_traces")

    def __init__(self, group: GroupSpec, matrix: np.ndarray):
        self.group = group
        self.matrix = matrix
        self._powers = {1: matrix}
        self._traces: dict[int, complex] = {}

    def _power(self, i: int) -> np.ndarray:
        p = self._powers.get(i)
        if p is None:
            p = self._power(i - 1) @ self.matrix
            self._powers[i] = p
        return p

    def trace_power(self, i: int, *, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
        if i < 1:
            raise ValueError(f"trace power index must be positive, got {i}")
        t = self._traces.get(i)
        if t is None:
            t = complex(np.trace(self._power(i)))
            self._traces[i] = t
        if abs(t.imag) > tolerances.trace_imag:
            raise DegeneracyError(
                f"trace of power {i} has imaginary residual {abs(t.imag):.3e}"
            )
        return t.real

    def residuals(self) -> dict[str, float]:
        """Validation residuals; all should sit at rounding level."""
        g = self.matrix
        m = g.shape[0]
        eye = np.eye(m)
        out = {
            "unitarity": float(np.max(np.abs(g @ np.conj(g.T) - eye))),
        }
        if self.group.family is Family.SP:
            n = self.group.rank
            j = np.zeros((m, m))
            j[:n, n:] = -np.eye(n)
            j[n:, :n] = np.eye(n)
            out["symplectic"] = float(np.max(np.abs(g @ j @ g.T - j)))
        else:
            out["orthogonality"] = float(np.max(np.abs(g @ g.T - eye)))
            out["determinant"] = float(abs(np.linalg.det(g) - 1.0))
        return out

    def validate(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        res = self.residuals()
        checks = {
            "unitarity": tolerances.unitarity,
            "orthogonality": tolerances.unitarity,
            "symplectic": tolerances.unitarity,
            "determinant": tolerances.determinant,
        }
        for name, value in res.items():
            if value > checks[name]:
                raise DegeneracyError(f"{name} residual {value:.3e} exceeds tolerance")


def sample(G: GroupSpec, rng: np.random.Generator) -> HaarSample:
    """One Haar draw.  The generator is consumed; repeated calls continue
    its stream (that is what the resample-on-degeneracy path relies on)."""
    return HaarSample(G, sample_matrices(G, [rng])[0])


def eval_trace_product(s: HaarSample, lam: Partition) -> float:
    out = 1.0
    for part in lam.parts:
        out *= s.trace_power(part)
    return out


def eval_phi(s: HaarSample, f: FourierData) -> float:
    n = s.group.rank
    exponent = n * float(f.c0)
    for i, c in f.coeffs.items():
        exponent += float(c) * s.trace_power(i)
    return float(np.exp(exponent))


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class HalfSpectrum:
    """One angle per conjugate eigenvalue pair, ascending in [0, pi]."""

    angles: tuple[float, ...]
    pairing_residual: float


def half_spectrum_batch(mats: np.ndarray, family: Family) -> tuple[np.ndarray, np.ndarray]:
    """Representative angles for a stack of matrices.

    Returns (angles of shape (batch, n) ascending, residual per matrix).
    The residual is the worst mismatch |t_a - conj(t_b)| over the claimed
    pairs; callers treat residual > tolerance as a degenerate draw.
    """
    ev = np.linalg.eigvals(mats)
    b, m = ev.shape
    if family is Family.SO_ODD:
        # one eigenvalue is forced to +1; drop the nearest per matrix
        drop = np.argmin(np.abs(ev - 1.0), axis=1)
        keep = np.ones((b, m), dtype=bool)
        keep[np.arange(b), drop] = False
        ev = ev[keep].reshape(b, m - 1)
        m -= 1
    theta = np.angle(ev)
    order = np.argsort(np.abs(theta), axis=1, kind="stable")
    ev = np.take_along_axis(ev, order, axis=1)
    theta = np.abs(np.take_along_axis(theta, order, axis=1))
    first, second = ev[:, 0::2], ev[:, 1::2]
    residual = np.max(np.abs(first - np.conj(second)), axis=1)
    angles = 0.5 * (theta[:, 0::2] + theta[:, 1::2])
    return angles, residual


def half_spectrum(
    s: HaarSample, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> HalfSpectrum:
    angles, residual = half_spectrum_batch(s.matrix[None, :, :], s.group.family)
    res = float(residual[0])
    if res > tolerances.pairing:
        raise DegeneracyError(
            f"conjugate pairing residual {res:.3e} exceeds {tolerances.pairing:.1e}; resample"
        )
    return HalfSpectrum(tuple(float(a) for a in angles[0]), res)


def reconstruct_spectrum(h: HalfSpectrum, family: Family) -> np.ndarray:
    """Full eigenvalue multiset implied by the half spectrum."""
    t = np.exp(1j * np.asarray(h.angles))
    values = np.concatenate([t, np.conj(t)])
    if family is Family.SO_ODD:
        values = np.append(values, 1.0 + 0.0j)
    return values


# ---------------------------------------------------------------------------
# Weyl character evaluation on angles


def _batch_det(matrix: np.ndarray) -> np.ndarray:
    return np.linalg.det(matrix)


def weyl_character_batch(
    family: Family,
    gamma: Partition,
    angles: np.ndarray,
    *,
    negative_last: bool = False,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[np.ndarray, np.ndarray]:
    """Character values on a stack of half spectra.

    Returns (complex values, degenerate mask).  Degenerate means the Weyl
    denominator fell below the configured floor, where the ratio loses all
    significance; callers resample those rows.

    negative_last flips the sign of the last exponent, selecting the
    mirror-image label for the even orthogonal family (only meaningful
    there, and only when the label has full length).
    """
    n = angles.shape[1]
    if gamma.length > n:
        raise ValueError(f"label {gamma} is longer than the rank {n}")
    if negative_last and family is not Family.SO_EVEN:
        raise ValueError("negative last part only exists for the even orthogonal family")
    parts = list(gamma.parts) + [0] * (n - gamma.length)

    if family is Family.SP:
        a = np.array([parts[j] + n - j for j in range(n)], dtype=float)
        bexp = np.array([n - j for j in range(n)], dtype=float)
        num = _batch_det(np.sin(angles[:, :, None] * a[None, None, :]))
        den = _batch_det(np.sin(angles[:, :, None] * bexp[None, None, :]))
        bad = np.abs(den) < tolerances.denominator_min
        values = np.where(bad, 1.0, num / np.where(bad, 1.0, den)).astype(np.complex128)
        return values, bad

    if family is Family.SO_ODD:
        a = np.array([parts[j] + n - j - 0.5 for j in range(n)])
        bexp = np.array([n - j - 0.5 for j in range(n)])
        num = _batch_det(np.sin(angles[:, :, None] * a[None, None, :]))
        den = _batch_det(np.sin(angles[:, :, None] * bexp[None, None, :]))
        bad = np.abs(den) < tolerances.denominator_min
        values = np.where(bad, 1.0, num / np.where(bad, 1.0, den)).astype(np.complex128)
        return values, bad

    # even orthogonal: signed character as (detCos +/- i^n detSin)/detCos
    a = np.array([parts[j] + (n - 1 - j) for j in range(n)], dtype=float)
    if negative_last:
        a[-1] = -parts[n - 1]
    bexp = np.array([n - 1 - j for j in range(n)], dtype=float)
    det_cos_a = _batch_det(np.cos(angles[:, :, None] * a[None, None, :]))
    det_sin_a = _batch_det(np.sin(angles[:, :, None] * a[None, None, :]))
    det_cos_b = _batch_det(np.cos(angles[:, :, None] * bexp[None, None, :]))
    bad = np.abs(det_cos_b) < tolerances.denominator_min
    safe = np.where(bad, 1.0, det_cos_b)
    values = (det_cos_a + (1j**n) * det_sin_a) / safe
    return np.where(bad, 1.0, values), bad


def eval_weyl_character(
    family: Family,
    gamma: Partition,
    h: HalfSpectrum,
    *,
    negative_last: bool = False,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Character value on one half spectrum, as a real number.

    Raises on degenerate denominators (caller resamples) and on values with
    a genuinely large imaginary part, which can only happen for even
    orthogonal labels of full length; request those through
    eval_orthogonal_pair instead.
    """
    angles = np.asarray(h.angles)[None, :]
    values, bad = weyl_character_batch(
        family, gamma, angles, negative_last=negative_last, tolerances=tolerances
    )
    if bool(bad[0]):
        raise DegeneracyError("Weyl denominator below the significance floor; resample")
    value = complex(values[0])
    if abs(value.imag) > tolerances.char_consistency * max(1.0, abs(value.real)):
        raise ValueError(
            f"character value {value} is not real; use eval_orthogonal_pair "
            "for full-length even orthogonal labels"
        )
    return value.real


def eval_orthogonal_pair(
    gamma: Partition, h: HalfSpectrum, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> tuple[complex, complex]:
    """The two mirror-image even orthogonal character values (plus, minus)."""
    angles = np.asarray(h.angles)[None, :]
    plus, bad1 = weyl_character_batch(
        Family.SO_EVEN, gamma, angles, tolerances=tolerances
    )
    minus, bad2 = weyl_character_batch(
        Family.SO_EVEN, gamma, angles, negative_last=True, tolerances=tolerances
    )
    if bool(bad1[0]) or bool(bad2[0]):
        raise DegeneracyError("Weyl denominator below the significance floor; resample")
    return complex(plus[0]), complex(minus[0])


def eval_orthogonal_unsigned(
    gamma: Partition, h: HalfSpectrum, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Even orthogonal restriction character: sum of the two mirror images
    when the label has full length, the single character otherwise.

    Computed directly from the cosine determinants, which gives a check
    independent of the plus/minus decomposition.
    """
    n = len(h.angles)
    angles = np.asarray(h.angles)[None, :]
    parts = list(gamma.parts) + [0] * (n - gamma.length)
    a = np.array([parts[j] + (n - 1 - j) for j in range(n)], dtype=float)
    bexp = np.array([n - 1 - j for j in range(n)], dtype=float)
    det_cos_a = _batch_det(np.cos(angles[:, :, None] * a[None, None, :]))[0]
    det_cos_b = _batch_det(np.cos(angles[:, :, None] * bexp[None, None, :]))[0]
    if abs(det_cos_b) < tolerances.denominator_min:
        raise DegeneracyError("Weyl denominator below the significance floor; resample")
    scale = 2.0 if (gamma.length == n and n > 0) else 1.0
    return float(scale * det_cos_a / det_cos_b)


# ---------------------------------------------------------------------------
# batched trace powers (used by the estimators)


def trace_powers_batch(mats: np.ndarray, pmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Traces of g^i for i = 1..pmax over a stack; returns (real traces of
    shape (batch, pmax), worst imaginary residual per matrix)."""
    b = mats.shape[0]
    if pmax <= 0:
        return np.zeros((b, 0)), np.zeros(b)
    out = np.empty((b, pmax), dtype=np.complex128)
    power = mats
    out[:, 0] = np.trace(power, axis1=1, axis2=2)
    for i in range(1, pmax):
        power = power @ mats
        out[:, i] = np.trace(power, axis1=1, axis2=2)
    return out.real.copy(), np.max(np.abs(out.imag), axis=1)
