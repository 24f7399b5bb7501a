"""Wirtinger-calculus finite differentiation and small dense Hermitian linear algebra.

Fields here are smooth but generally non-holomorphic functions of one or more
complex variables, so complex-step differentiation does not apply.  Every
derivative is assembled from 4th-order central differences along real axes,

    d/dw     = (d/dx - i d/dy) / 2,
    d/dwbar  = (d/dx + i d/dy) / 2,

optionally Richardson-extrapolated over step halvings (error orders 4, 6, 8, ...).
These routines are the independent oracle that every closed-form tensor in the
rest of the package is checked against, so they deliberately share no code with
the analytic jet machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainViolation,
    HermitianViolation,
    NonFiniteEvaluation,
    SingularMatrix,
    StencilOutsideDomain,
)

__all__ = [
    "FDConfig",
    "wirtinger_gradient",
    "wirtinger_mixed_hessian",
    "wirtinger_second",
    "hermitian_inverse_det",
    "positive_definite",
    "check_hermitian",
]

DEFAULT_STEP = 1e-3
DEFAULT_TOL_HERM = 1e-8
DEFAULT_TOL_PD = 1e-12

# offsets/weights of the 4th-order central first-derivative stencil
_D1_OFFSETS = (-2.0, -1.0, 1.0, 2.0)
_D1_WEIGHTS = (1.0, -8.0, 8.0, -1.0)  # divided by 12 h


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference configuration.

    ``step`` is a relative base step: the actual spacing used at a point p is
    ``step * max(1, |p|_inf)``.  ``richardson_levels`` halvings of the step are
    combined by Richardson extrapolation (1 means plain stencils).
    """

    step: float = DEFAULT_STEP
    richardson_levels: int = 2
    tol_herm: float = DEFAULT_TOL_HERM
    tol_pd: float = DEFAULT_TOL_PD

    def __post_init__(self):
        if not (0.0 < self.step < 1.0):
            raise ValueError(f"step must lie in (0, 1), got {self.step}")
        if not (1 <= int(self.richardson_levels) <= 4):
            raise ValueError("richardson_levels must be an integer in [1, 4]")
        if self.tol_herm <= 0.0 or self.tol_pd <= 0.0:
            raise ValueError("tolerances must be positive")


def _probe(field: Callable, point: np.ndarray) -> np.ndarray:
    """Evaluate ``field`` at ``point``, policing finiteness and domain."""
    try:
        value = field(point)
    except DomainViolation as exc:
        raise StencilOutsideDomain(f"stencil point rejected: {exc}") from exc
    arr = np.asarray(value, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEvaluation(f"field returned non-finite value at stencil point {point!r}")
    return arr


def _d1(field, point, direction, h):
    """4th-order first derivative along the real line tau -> point + tau*direction."""
    acc = 0.0
    for w, k in zip(_D1_WEIGHTS, _D1_OFFSETS):
        acc = acc + w * _probe(field, point + (k * h) * direction)
    return acc / (12.0 * h)


def _d2_same(field, point, direction, h):
    """4th-order second derivative along a single real line."""
    f0 = _probe(field, point)
    fp1 = _probe(field, point + h * direction)
    fm1 = _probe(field, point - h * direction)
    fp2 = _probe(field, point + (2.0 * h) * direction)
    fm2 = _probe(field, point - (2.0 * h) * direction)
    return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)


def _d2_cross(field, point, dir_a, dir_b, h):
    """Tensor product of two first-derivative stencils along distinct real lines."""
    acc = 0.0
    for wa, ka in zip(_D1_WEIGHTS, _D1_OFFSETS):
        for wb, kb in zip(_D1_WEIGHTS, _D1_OFFSETS):
            acc = acc + (wa * wb) * _probe(field, point + (ka * h) * dir_a + (kb * h) * dir_b)
    return acc / (144.0 * h * h)


def _richardson(values: Sequence):
    """Extrapolate a sequence of stencil values at steps h, h/2, h/4, ...

    Central stencils of 4th order have even error expansions, so successive
    eliminated orders are 4, 6, 8.
    """
    vals = list(values)
    order = 4
    while len(vals) > 1:
        f = 2.0 ** order
        vals = [(f * fine - coarse) / (f - 1.0) for coarse, fine in zip(vals, vals[1:])]
        order += 2
    return vals[0]


def _base_step(point: np.ndarray, cfg: FDConfig) -> float:
    scale = float(np.max(np.abs(point))) if point.size else 0.0
    return cfg.step * max(1.0, scale)


def _rich_d1(field, point, direction, cfg):
    h0 = _base_step(point, cfg)
    return _richardson([_d1(field, point, direction, h0 / 2.0 ** k)
                        for k in range(cfg.richardson_levels)])


def _rich_d2_same(field, point, direction, cfg):
    h0 = _base_step(point, cfg)
    return _richardson([_d2_same(field, point, direction, h0 / 2.0 ** k)
                        for k in range(cfg.richardson_levels)])


def _rich_d2_cross(field, point, dir_a, dir_b, cfg):
    h0 = _base_step(point, cfg)
    return _richardson([_d2_cross(field, point, dir_a, dir_b, h0 / 2.0 ** k)
                        for k in range(cfg.richardson_levels)])


def _unit(m: int, i: int) -> np.ndarray:
    e = np.zeros(m, dtype=complex)
    e[i] = 1.0
    return e


def wirtinger_gradient(field: Callable, point, cfg: FDConfig | None = None):
    """Holomorphic and anti-holomorphic first derivatives of ``field`` at ``point``.

    ``field`` maps a complex vector of length m to a complex scalar (or array;
    array outputs are differentiated componentwise).  Returns ``(holo, anti)``
    with ``holo[a] ~ d field / d w^a`` and ``anti[a] ~ d field / d wbar^a``.
    For a real-valued field ``anti = conj(holo)``.
    """
    cfg = cfg or FDConfig()
    point = np.atleast_1d(np.asarray(point, dtype=complex))
    if not np.all(np.isfinite(point)):
        raise NonFiniteEvaluation("differentiation point is not finite")
    m = point.size
    holo, anti = [], []
    for a in range(m):
        e = _unit(m, a)
        dx = _rich_d1(field, point, e, cfg)
        dy = _rich_d1(field, point, 1j * e, cfg)
        holo.append(0.5 * (dx - 1j * dy))
        anti.append(0.5 * (dx + 1j * dy))
    return np.stack(holo), np.stack(anti)


def wirtinger_second(field: Callable, point, i: int, j: int,
                     conj_i: bool, conj_j: bool, cfg: FDConfig | None = None) -> complex:
    """One mixed second Wirtinger derivative, selected by index and bar-flags.

    Returns ``d^2 field / d w_i^(ci) d w_j^(cj)`` where a True flag picks the
    conjugated variable.  The four real-axis second derivatives entering the
    combination are true 2-D stencils, never nested first differences.
    """
    cfg = cfg or FDConfig()
    point = np.atleast_1d(np.asarray(point, dtype=complex))
    m = point.size
    s1 = 1.0 if conj_i else -1.0
    s2 = 1.0 if conj_j else -1.0
    ex_i, ey_i = _unit(m, i), 1j * _unit(m, i)
    ex_j, ey_j = _unit(m, j), 1j * _unit(m, j)
    if i == j:
        cxx = _rich_d2_same(field, point, ex_i, cfg)
        cyy = _rich_d2_same(field, point, ey_i, cfg)
        cxy = _rich_d2_cross(field, point, ex_i, ey_i, cfg)
        cyx = cxy
    else:
        cxx = _rich_d2_cross(field, point, ex_i, ex_j, cfg)
        cyy = _rich_d2_cross(field, point, ey_i, ey_j, cfg)
        cxy = _rich_d2_cross(field, point, ex_i, ey_j, cfg)
        cyx = _rich_d2_cross(field, point, ey_i, ex_j, cfg)
    return complex(0.25 * (cxx + s2 * 1j * cxy + s1 * 1j * cyx - s1 * s2 * cyy))


def wirtinger_mixed_hessian(field: Callable, point, cfg: FDConfig | None = None) -> np.ndarray:
    """Mixed Hessian H[a, b] ~ d^2 field / d w^a d wbar^b.

    For a real-valued field the result must be Hermitian; an asymmetry beyond
    ``cfg.tol_herm`` (absolute, on the unit-scaled matrix) raises
    HermitianViolation, otherwise the Hermitian average is returned.
    """
    cfg = cfg or FDConfig()
    point = np.atleast_1d(np.asarray(point, dtype=complex))
    m = point.size
    center = complex(np.asarray(_probe(field, point), dtype=complex).reshape(()))
    H = np.zeros((m, m), dtype=complex)
    for a in range(m):
        ex_a, ey_a = _unit(m, a), 1j * _unit(m, a)
        dxx = _rich_d2_same(field, point, ex_a, cfg)
        dyy = _rich_d2_same(field, point, ey_a, cfg)
        H[a, a] = 0.25 * (dxx + dyy)
        for b in range(a + 1, m):
            ex_b, ey_b = _unit(m, b), 1j * _unit(m, b)
            cxx = _rich_d2_cross(field, point, ex_a, ex_b, cfg)
            cyy = _rich_d2_cross(field, point, ey_a, ey_b, cfg)
            cxy = _rich_d2_cross(field, point, ex_a, ey_b, cfg)
            cyx = _rich_d2_cross(field, point, ey_a, ex_b, cfg)
            # d^2/dw^a dwbar^b and d^2/dw^b dwbar^a from the same four stencils
            H[a, b] = 0.25 * ((cxx + cyy) + 1j * (cxy - cyx))
            H[b, a] = 0.25 * ((cxx + cyy) + 1j * (cyx - cxy))
    field_is_real = abs(center.imag) <= 1e-10 * max(1.0, abs(center))
    if field_is_real:
        scale = max(1.0, float(np.max(np.abs(H)))) if m else 1.0
        asym = float(np.max(np.abs(H - H.conj().T)))
        if asym > cfg.tol_herm * scale:
            raise HermitianViolation(
                f"mixed Hessian of a real-valued field is asymmetric by {asym:.3e}")
        H = 0.5 * (H + H.conj().T)
    return H


def check_hermitian(m, tol: float = DEFAULT_TOL_HERM) -> np.ndarray:
    """Validate conjugate symmetry of ``m`` within ``tol`` (unit-scaled, absolute)."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(m))))
    asym = float(np.max(np.abs(m - m.conj().T)))
    if asym > tol * scale:
        raise HermitianViolation(f"matrix asymmetric by {asym:.3e} (tol {tol:.1e})")
    return m


def hermitian_inverse_det(m, tol_pd: float = DEFAULT_TOL_PD,
                          tol_herm: float = DEFAULT_TOL_HERM):
    """Inverse and (real) determinant of a Hermitian matrix.

    Works through the eigendecomposition, so the determinant is a product of
    real eigenvalues and the inverse is Hermitian by construction.  An
    eigenvalue of magnitude below ``tol_pd * max|eig|`` raises SingularMatrix.
    """
    m = check_hermitian(m, tol_herm)
    w, vecs = np.linalg.eigh(m)
    wmax = float(np.max(np.abs(w))) if w.size else 0.0
    if wmax == 0.0 or float(np.min(np.abs(w))) < tol_pd * wmax:
        raise SingularMatrix(f"eigenvalue magnitude below threshold {tol_pd * wmax:.3e}")
    det = float(np.prod(w))
    inv = (vecs / w) @ vecs.conj().T
    inv = 0.5 * (inv + inv.conj().T)
    return inv, det


def positive_definite(m, tol_pd: float = DEFAULT_TOL_PD) -> bool:
    """Positive definiteness via a pivoted Hermitian triangular factorization.

    The pivot threshold is ``tol_pd * trace / n``; any pivot at or below it
    (or non-finite) makes the answer False.  Never raises.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    tr = float(np.trace(m).real)
    if not math.isfinite(tr) or tr <= 0.0:
        return False
    threshold = tol_pd * tr / n
    L = np.zeros((n, n), dtype=complex)
    for k in range(n):
        pivot = m[k, k].real - float(np.sum(np.abs(L[k, :k]) ** 2))
        if not math.isfinite(pivot) or pivot <= threshold:
            return False
        L[k, k] = math.sqrt(pivot)
        for j in range(k + 1, n):
            L[j, k] = (m[j, k] - np.sum(L[j, :k] * np.conj(L[k, :k]))) / L[k, k]
    return True
