"""Pointwise tensors of F = sqrt(r * phi(t, s)).

Conventions, fixed once for the whole package:

* pairing <z, v> = sum_a z^a * conj(v^a); this is the convention under which
  s_a := ds/dv^a = -r^-2 conj(v^a) |<z,v>|^2 + r^-1 <z,v> conj(z^a).
* the Levi matrix is stored as M[a, b] = G_{a b-bar}, so the squared length is
  sum_{a,b} M[a, b] v^a conj(v^b) and M is Hermitian.
* the inverse with upper indices, G^{a b-bar}, is conj(M^-1); with it the
  nonlinear connection is N = conj(M^-1) @ D where D[g, b] = d^2 G / d vbar^g d z^b.

Closed forms used here:

    M = (phi - s phi_s) I + r phi_ss outer(s_a, conj(s_a)) + phi_s outer(conj(z), z)
    det M = {(phi - s phi_s)[phi + (t-s) phi_s] + s (t-s) phi phi_ss} (phi - s phi_s)^(n-2)
    G_a = conj(v^a) phi + r phi_s s_a
    D   = phi_s pbar I + phi_t outer(v, conj(z)) + r phi_ts outer(conj(s_a), conj(z))
          + phi_ss pbar outer(conj(s_a), conj(v))
    2 GG^g = N^g_b v^b = k2 pbar v^g + k3 pbar^2 z^g

Every closed form has an independent Wirtinger finite-difference oracle in this
module or in the test-suite; the FD paths never reuse the chain-rule code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateK1, ZeroVector
from .numerics import FDConfig, hermitian_inverse_det, wirtinger_mixed_hessian, wirtinger_second
from .profiles import MetricProfile

__all__ = [
    "PointVector",
    "LeviData",
    "SprayData",
    "ConnectionData",
    "invariants",
    "levi_closed",
    "levi_oracle",
    "det_closed",
    "pseudoconvexity_check",
    "k_scalars",
    "spray_coefficients",
    "nonlinear_connection_fd",
    "connection_coefficients",
    "metric_scalars",
]

K1_DEGENERACY = 1e-12


def invariants(z, v):
    """(r, t, s, pairing) for a base point z and tangent vector v.

    r = |v|^2, t = |z|^2, pairing = <z, v>, s = |pairing|^2 / r, with
    0 <= s <= t by Cauchy-Schwarz (s is clamped against rounding overshoot).
    """
    # plain-Python accumulation: these vectors have a handful of entries and
    # sit inside finite-difference stencil loops
    zl = z.tolist() if isinstance(z, np.ndarray) else [complex(x) for x in z]
    vl = v.tolist() if isinstance(v, np.ndarray) else [complex(x) for x in v]
    r = 0.0
    t = 0.0
    pairing = 0j
    for a, b in zip(zl, vl):
        t += a.real * a.real + a.imag * a.imag
        r += b.real * b.real + b.imag * b.imag
        pairing += a * b.conjugate()
    if r == 0.0:
        raise ZeroVector("tangent vector v must be nonzero")
    s = (pairing.real * pairing.real + pairing.imag * pairing.imag) / r
    if s > t:
        if s > t * (1.0 + 1e-9) + 1e-300:
            raise ValueError(f"s = {s} exceeds t = {t} beyond rounding slack")
        s = t
    return r, t, s, pairing


@dataclass(frozen=True)
class PointVector:
    """A base point z in C^n and tangent vector v with derived invariants."""

    z: np.ndarray
    v: np.ndarray
    n: int = field(init=False)
    r: float = field(init=False)
    t: float = field(init=False)
    s: float = field(init=False)
    pairing: complex = field(init=False)

    def __post_init__(self):
        z = np.array(self.z, dtype=complex)
        v = np.array(self.v, dtype=complex)
        if z.ndim != 1 or v.ndim != 1 or z.size != v.size:
            raise ValueError("z and v must be 1-D arrays of equal length")
        if z.size < 2:
            raise ValueError("dimension must be at least 2 (s = t identically for n = 1)")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(v))):
            raise ValueError("z and v must be finite")
        z.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "v", v)
        r, t, s, pairing = invariants(z, v)
        object.__setattr__(self, "n", int(z.size))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "pairing", pairing)


@dataclass(frozen=True)
class LeviData:
    """Levi matrix M[a,b] = G_{a b-bar}, inverse G^{a b-bar} = conj(M^-1), det, gradient."""

    levi: np.ndarray
    inverse: np.ndarray
    det: float
    g_alpha: np.ndarray
    G: float


@dataclass(frozen=True)
class SprayData:
    k1: float
    k2: float
    k3: float
    spray: np.ndarray   # 2 GG^a
    nconn: np.ndarray   # N^a_b, chain-rule closed form


@dataclass(frozen=True)
class ConnectionData:
    gamma: np.ndarray   # Gamma^a_{b;g}, indices [a, b, g]
    cee: np.ndarray     # C^a_{b g}, indices [a, b, g]


def _s_alpha(z, v, r, pairing):
    return -np.conj(v) * (abs(pairing) ** 2) / r ** 2 + pairing * np.conj(z) / r


def _levi_matrix(profile, z, v):
    """Closed-form Levi matrix (no inverse / determinant)."""
    r, t, s, pairing = invariants(z, v)
    j = profile.raw_jet(t, s, 2)
    phi = j.value
    phi_s = j.partial(0, 1)
    phi_ss = j.partial(0, 2)
    sa = _s_alpha(z, v, r, pairing)
    n = z.size
    M = (phi - s * phi_s) * np.eye(n, dtype=complex)
    M += (r * phi_ss) * np.outer(sa, np.conj(sa))
    M += phi_s * np.outer(np.conj(z), z)
    return M


def _g_alpha(profile, z, v):
    r, t, s, pairing = invariants(z, v)
    j = profile.raw_jet(t, s, 1)
    phi = j.value
    phi_s = j.partial(0, 1)
    return np.conj(v) * phi + (r * phi_s) * _s_alpha(z, v, r, pairing)


def levi_closed(profile: MetricProfile, pv: PointVector,
                cfg: FDConfig | None = None) -> LeviData:
    """LeviData from the closed forms; inverse/determinant via the eigensolver."""
    cfg = cfg or FDConfig()
    M = _levi_matrix(profile, pv.z, pv.v)
    inv_plain, det = hermitian_inverse_det(M, tol_pd=cfg.tol_pd, tol_herm=cfg.tol_herm)
    j = profile.raw_jet(pv.t, pv.s, 1)
    phi = j.value
    ga = np.conj(pv.v) * phi + (pv.r * j.partial(0, 1)) * _s_alpha(pv.z, pv.v, pv.r, pv.pairing)
    return LeviData(levi=M, inverse=np.conj(inv_plain), det=det,
                    g_alpha=ga, G=pv.r * phi)


def levi_oracle(profile: MetricProfile, pv: PointVector,
                cfg: FDConfig | None = None) -> np.ndarray:
    """Mixed Wirtinger Hessian of v -> r phi(t, s(v)): the Levi matrix oracle."""
    z = pv.z

    def metric_sq(v):
        r, t, s, _ = invariants(z, v)
        return r * profile.value(t, s)

    return wirtinger_mixed_hessian(metric_sq, pv.v, cfg)


def det_closed(profile: MetricProfile, t: float, s: float, n: int) -> float:
    """Closed-form determinant of the Levi matrix."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    j = profile.raw_jet(t, s, 2)
    phi = j.value
    phi_s = j.partial(0, 1)
    phi_ss = j.partial(0, 2)
    head = (phi - s * phi_s) * (phi + (t - s) * phi_s) + s * (t - s) * phi * phi_ss
    return head * (phi - s * phi_s) ** (n - 2)


def pseudoconvexity_check(profile: MetricProfile, t: float, s: float):
    """Strong pseudo-convexity conditions (cond1, cond2, ok).

    cond1 = phi - s phi_s and cond2 = the determinant head factor; the metric
    is strongly pseudo-convex at (t, s) iff both are positive.  Evaluates on
    the smooth region so boundary failures are reported rather than raised.
    """
    j = profile.jet_smooth(t, s)
    cond1 = j.phi - s * j.phi_s
    cond2 = cond1 * (j.phi + (t - s) * j.phi_s) + s * (t - s) * j.phi * j.phi_ss
    return cond1, cond2, bool(cond1 > 0.0 and cond2 > 0.0)


def k_scalars(profile: MetricProfile, t: float, s: float):
    """The spray scalars (k1, k2, k3) at (t, s).

    k1 is the determinant head factor; k2, k3 are the coefficients of the spray
    decomposition 2 GG^g = k2 pbar v^g + k3 pbar^2 z^g.  Raises DegenerateK1
    when |k1| < 1e-12 phi^2 (pseudo-convexity failure).
    """
    j = profile.raw_jet(t, s, 2)
    phi = j.value
    phi_t = j.partial(1, 0)
    phi_s = j.partial(0, 1)
    phi_ts = j.partial(1, 1)
    phi_ss = j.partial(0, 2)
    head = phi + (t - s) * phi_s
    k1 = (phi - s * phi_s) * head + s * (t - s) * phi * phi_ss
    if abs(k1) < K1_DEGENERACY * phi * phi:
        raise DegenerateK1(f"k1 = {k1} is degenerate relative to phi^2 = {phi * phi}")
    k2 = ((head + s * (t - s) * phi_ss) * (phi_t + phi_s)
          - s * head * (phi_ts + phi_ss)) / k1
    k3 = (phi * (phi_ts + phi_ss) - phi_s * (phi_t + phi_s)) / k1
    return k1, k2, k3


def _spray_vector(profile, z, v):
    r, t, s, pairing = invariants(z, v)
    _, k2, k3 = k_scalars(profile, t, s)
    pbar = np.conj(pairing)
    return k2 * pbar * v + k3 * pbar * pbar * z


def _connection_matrix_closed(profile, z, v):
    """D[g, b] = G_{g-bar; b} = d^2 G / d vbar^g d z^b, chain-rule closed form."""
    r, t, s, pairing = invariants(z, v)
    j = profile.raw_jet(t, s, 2)
    phi_t = j.partial(1, 0)
    phi_s = j.partial(0, 1)
    phi_ts = j.partial(1, 1)
    phi_ss = j.partial(0, 2)
    pbar = np.conj(pairing)
    sbar = np.conj(_s_alpha(z, v, r, pairing))
    n = z.size
    D = (phi_s * pbar) * np.eye(n, dtype=complex)
    D += phi_t * np.outer(v, np.conj(z))
    D += (r * phi_ts) * np.outer(sbar, np.conj(z))
    D += (phi_ss * pbar) * np.outer(sbar, np.conj(v))
    return D


def spray_coefficients(profile: MetricProfile, pv: PointVector,
                       cfg: FDConfig | None = None) -> SprayData:
    """Spray scalars, spray vector and the closed-form nonlinear connection."""
    k1, k2, k3 = k_scalars(profile, pv.t, pv.s)
    pbar = np.conj(pv.pairing)
    spray = k2 * pbar * pv.v + k3 * pbar * pbar * pv.z
    levi = levi_closed(profile, pv, cfg)
    D = _connection_matrix_closed(profile, pv.z, pv.v)
    nconn = levi.inverse @ D
    return SprayData(k1=k1, k2=k2, k3=k3, spray=spray, nconn=nconn)


def nonlinear_connection_fd(profile: MetricProfile, pv: PointVector,
                            cfg: FDConfig | None = None) -> np.ndarray:
    """FD oracle for N^a_b: cross-block second Wirtinger derivatives of G.

    D[g, b] = d^2 G / d vbar^g d z^b is taken directly from the scalar field
    G(z, v) = r phi(t, s) on the joint 2n-dimensional point, then contracted
    with the closed-form inverse Levi matrix.
    """
    cfg = cfg or FDConfig()
    n = pv.n

    def joint_metric(w):
        r, t, s, _ = invariants(w[:n], w[n:])
        return r * profile.value(t, s)

    joint = np.concatenate([pv.z, pv.v])
    D = np.zeros((n, n), dtype=complex)
    for g in range(n):
        for b in range(n):
            D[g, b] = wirtinger_second(joint_metric, joint, n + g, b,
                                       conj_i=True, conj_j=False, cfg=cfg)
    levi = levi_closed(profile, pv, cfg)
    return levi.inverse @ D


def connection_coefficients(profile: MetricProfile, pv: PointVector,
                            cfg: FDConfig | None = None) -> ConnectionData:
    """Chern-Finsler connection coefficients Gamma^a_{b;g} and C^a_{b g}.

    The z- and v-derivatives of the closed-form Levi matrix are taken by
    Wirtinger finite differences; the horizontal derivative is
    delta/delta z^g = d/dz^g - N^m_g d/dv^m with the closed-form N.
    """
    from .numerics import wirtinger_gradient

    cfg = cfg or FDConfig()
    levi = levi_closed(profile, pv, cfg)
    N = spray_coefficients(profile, pv, cfg).nconn
    z0, v0 = pv.z, pv.v

    dMdz, _ = wirtinger_gradient(lambda w: _levi_matrix(profile, w, v0), z0, cfg)
    dMdv, _ = wirtinger_gradient(lambda w: _levi_matrix(profile, z0, w), v0, cfg)
    # dMdz[g][b, e] = d M[b, e] / d z^g ; horizontal correction subtracts N^m_g d/dv^m
    T = np.einsum('gbe->beg', dMdz) - np.einsum('mg,mbe->beg', N, dMdv)
    gamma = np.einsum('ae,beg->abg', levi.inverse, T)
    cee = np.einsum('ae,gbe->abg', levi.inverse, dMdv)
    return ConnectionData(gamma=gamma, cee=cee)


def metric_scalars(profile: MetricProfile, z, v, cfg: FDConfig | None = None) -> dict:
    """The scalar outputs at (z, v): G, det, k1, k2, k3, cond1, cond2.

    All are invariant under a simultaneous unitary rotation of z and v.
    """
    pv = PointVector(np.asarray(z), np.asarray(v))
    levi = levi_closed(profile, pv, cfg)
    k1, k2, k3 = k_scalars(profile, pv.t, pv.s)
    cond1, cond2, _ = pseudoconvexity_check(profile, pv.t, pv.s)
    return {"G": levi.G, "det": levi.det, "k1": k1, "k2": k2, "k3": k3,
            "cond1": cond1, "cond2": cond2}
