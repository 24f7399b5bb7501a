"""Seeded, reproducible domain sampling.

The generator is Philox (counter-based, 4x64), keyed per sample index as
``key = (seed, index)``.  Streams for distinct indices are statistically
independent and the whole sample set is a pure function of the seed, so two
runs with the same configuration give bitwise-identical samples.

Each draw places t uniformly in ``t_range``, picks a target fraction
sigma = s/t uniformly in ``s_fraction_range``, draws z with |z|^2 = t and
uniform direction, then mixes a unit tangent vector from the z-direction and a
Gram-Schmidt-orthogonal direction so that s/t = sigma exactly.  Draws that the
profile rejects are retried within the same per-index stream and recorded;
rejection sampling (never clamping) keeps boundary-degenerate points out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyAfterRejection
from .profiles import MetricProfile, S_MIN_FRACTION
from .tensors import PointVector

__all__ = ["SampleSpec", "sample_domain", "sample_domain_detailed",
           "default_t_range", "seeded_unitary"]

_MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class SampleSpec:
    """What to draw: dimension, count, seed and the (t, s/t) windows."""

    n: int = 2
    count: int = 100
    seed: int = 0
    t_range: tuple[float, float] | None = None
    s_fraction_range: tuple[float, float] = (0.1, 0.9)

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"dimension must be >= 2, got {self.n}")
        if self.count < 1:
            raise ConfigError(f"count must be positive, got {self.count}")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer")
        lo, hi = self.s_fraction_range
        if not (S_MIN_FRACTION < lo < hi < 1.0 - S_MIN_FRACTION):
            raise ConfigError(
                f"s_fraction_range must be a nonempty sub-interval of "
                f"({S_MIN_FRACTION}, {1 - S_MIN_FRACTION}), got {self.s_fraction_range}")
        if self.t_range is not None:
            tlo, thi = self.t_range
            if not (0.0 <= tlo < thi and math.isfinite(thi)):
                raise ConfigError(f"t_range must be a nonempty finite interval, got {self.t_range}")


def default_t_range(profile: MetricProfile) -> tuple[float, float]:
    """A t-window inside the profile's validity interval, with 10% margins.

    Unbounded intervals are cut at lo + 2.5 so that e.g. profiles on all of
    t > 0 are sampled on (0.25, 2.25).
    """
    lo, hi = profile.t_interval
    if not math.isfinite(hi):
        hi = lo + 2.5
    width = hi - lo
    return (lo + 0.1 * width, hi - 0.1 * width)


def _rng(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index & 0xFFFFFFFFFFFFFFFF],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _complex_gaussian(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _draw(rng, n, t_range, s_range, profile):
    """One attempt; returns (PointVector, None) or (None, reason)."""
    t = rng.uniform(*t_range)
    sigma = rng.uniform(*s_range)
    u = _complex_gaussian(rng, n)
    norm = np.linalg.norm(u)
    if norm < 1e-12:
        return None, "degenerate direction draw"
    e = u / norm
    z = math.sqrt(t) * e
    w = _complex_gaussian(rng, n)
    w = w - np.sum(w * np.conj(e)) * e  # <w, e> = 0
    wnorm = np.linalg.norm(w)
    if wnorm < 1e-12:
        return None, "degenerate orthogonal draw"
    w = w / wnorm
    th1, th2 = rng.uniform(0.0, 2.0 * math.pi, size=2)
    v = (math.sqrt(sigma) * np.exp(1j * th1) * e
         + math.sqrt(1.0 - sigma) * np.exp(1j * th2) * w)
    pv = PointVector(z, v)
    if not (0.0 < pv.s < pv.t):
        return None, f"s/t constraint violated (s={pv.s}, t={pv.t})"
    if not profile.is_valid(pv.t, pv.s):
        return None, f"profile rejects (t, s) = ({pv.t}, {pv.s})"
    return pv, None


def sample_domain_detailed(spec: SampleSpec, profile: MetricProfile):
    """(points, rejections): rejections list one dict per exhausted index."""
    t_range = spec.t_range or default_t_range(profile)
    lo, hi = t_range
    ilo, ihi = profile.t_interval
    if lo < ilo or hi > ihi:
        raise ConfigError(
            f"t_range {t_range} leaves the profile validity interval {profile.t_interval}")
    points, rejections = [], []
    total_draws = 0
    for index in range(spec.count):
        rng = _rng(spec.seed, index)
        reason = "no attempt"
        for _ in range(_MAX_ATTEMPTS):
            total_draws += 1
            pv, reason = _draw(rng, spec.n, t_range, spec.s_fraction_range, profile)
            if pv is not None:
                points.append((index, pv))
                break
        else:
            rejections.append({"index": index, "reason": reason})
    if total_draws > 0 and len(points) < 0.1 * total_draws:
        raise EmptyAfterRejection(
            f"{total_draws - len(points)} of {total_draws} draws rejected")
    return points, rejections


def sample_domain(spec: SampleSpec, profile: MetricProfile):
    """Deterministic list of valid PointVectors for the profile."""
    points, _ = sample_domain_detailed(spec, profile)
    return [pv for _, pv in points]


def seeded_unitary(n: int, seed: int) -> np.ndarray:
    """A deterministic unitary matrix from a QR factorization with fixed phases."""
    rng = _rng(seed, 0xA5A5)
    q, r = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))
