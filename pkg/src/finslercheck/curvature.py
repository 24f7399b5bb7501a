"""Holomorphic curvature and Kahler-type torsion diagnostics.

The weakly-Kahler condition for F = sqrt(r phi(t, s)) is, in terms of phi,

    (phi - s phi_s)[phi + (t-s) phi_s][phi_s - phi_t + s (phi_ts + phi_ss)]
      + s (t-s) phi_ss [phi (phi_s - phi_t) + s phi_s (phi_t + phi_s)]  =  0

and, after the substitution

    U = (s phi + s (t-s) phi_s) / phi,      W = (phi_t + phi_s) / phi,

equivalently

    s U (U - t) W_s - s (U - t) U_s W - 2 (U - s) U_s  =  0.

Three holomorphic-curvature evaluations are provided:

* ``holomorphic_curvature_direct``   the defining horizontal contraction
  -(2/G^2) G_a delta_gbar(N^a_b) v^b vbar^g, evaluated by Wirtinger finite
  differences of the closed-form spray (no chain rule);
* ``holomorphic_curvature_closed``   the general closed form
  -(2/phi){[s(dk2/dt + dk2/ds) + k2] + U [s(dk3/dt + dk3/ds) + 2 k3]};
* ``holomorphic_curvature_wk``       the weakly-Kahler specialisation
  -(2/phi){s(W_t + W_s) - s^2 (t-s) W_s^2 / U_s + W}, guarded by the
  residual of the weakly-Kahler equation at the same point.

Universal identities (no Kahler hypothesis), each exposed as a residual:

    s (U_t + U_s) = s^2 (t-s) W_s + U            (mixed-partial integrability)
    dk2/ds + U dk3/ds = 0
    k1 = U_s phi^2,  k2 = (W U_s - U W_s)/U_s,  k3 = W_s / U_s
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateK1, DegenerateUs, DomainViolation, NotWeaklyKahler
from .jets import Jet2
from .numerics import FDConfig, wirtinger_gradient
from .profiles import MetricProfile, PhiJet
from .tensors import (
    K1_DEGENERACY,
    PointVector,
    _g_alpha,
    _spray_vector,
    connection_coefficients,
    levi_closed,
)

__all__ = [
    "UWData",
    "KahlerReport",
    "CurvatureReport",
    "uw",
    "wk_residual_phi",
    "wk_residual_uw",
    "lemma_integrability_residual",
    "k2_k3_identity_residual",
    "holomorphic_curvature_direct",
    "holomorphic_curvature_closed",
    "holomorphic_curvature_wk",
    "wk_spray_identities_residual",
    "kahler_classify",
    "curvature_report",
    "WK_RESIDUAL_GATE",
    "US_DEGENERACY",
]

# gate on |wk_residual_uw| below which the weakly-Kahler curvature formula applies
WK_RESIDUAL_GATE = 1e-8
US_DEGENERACY = 1e-12
# consumers of the U/W transform stay away from s = t where (t - s) divides
_UW_MARGIN = 1e-6


@dataclass(frozen=True)
class UWData:
    U: float
    W: float
    U_s: float
    U_t: float
    W_s: float
    W_t: float


@dataclass(frozen=True)
class KahlerReport:
    """Normalized torsion residuals, strongest notion first.

    Each residual is the max-norm of the corresponding antisymmetry divided by
    the max magnitude of the quantities entering it (Gamma entries, then also
    the l1 norms of v and of the metric gradient), so the implication chain
    strong >= kahler >= weakly holds exactly at the residual level.
    """

    strong_residual: float
    kahler_residual: float
    weakly_residual: float


@dataclass(frozen=True)
class CurvatureReport:
    kf_direct: float
    kf_closed: float
    kf_wk: float | None
    pairwise_dev: float


def _order1_jets(j: PhiJet, t: float, s: float) -> dict:
    """Order-1 (t, s)-jets of phi and its partials, from the order-3 jet."""
    return {
        "T": Jet2.var_t(t, 1),
        "S": Jet2.var_s(s, 1),
        "phi": Jet2(1, [j.phi, j.phi_t, j.phi_s]),
        "phi_t": Jet2(1, [j.phi_t, j.phi_tt, j.phi_ts]),
        "phi_s": Jet2(1, [j.phi_s, j.phi_ts, j.phi_ss]),
        "phi_tt": Jet2(1, [j.phi_tt, j.phi_ttt, j.phi_tts]),
        "phi_ts": Jet2(1, [j.phi_ts, j.phi_tts, j.phi_tss]),
        "phi_ss": Jet2(1, [j.phi_ss, j.phi_tss, j.phi_sss]),
    }


def _uw_jets(q: dict):
    """Order-1 jets of U and W."""
    T, S = q["T"], q["S"]
    phi, phi_t, phi_s = q["phi"], q["phi_t"], q["phi_s"]
    U = (S * phi + S * (T - S) * phi_s) / phi
    W = (phi_t + phi_s) / phi
    return U, W


def _check_uw_domain(profile, t, s):
    if not (0.0 < s <= (1.0 - _UW_MARGIN) * t):
        raise DomainViolation(
            f"U/W transform needs 0 < s <= (1 - 1e-6) t, got (t, s) = ({t}, {s})")
    if not profile.is_valid(t, s):
        raise DomainViolation(f"(t, s) = ({t}, {s}) outside profile validity")


def uw(profile: MetricProfile, t: float, s: float) -> UWData:
    """U, W and their first partials at (t, s)."""
    _check_uw_domain(profile, t, s)
    q = _order1_jets(profile.jet(t, s), t, s)
    U, W = _uw_jets(q)
    return UWData(U=U.value, W=W.value,
                  U_s=U.partial(0, 1), U_t=U.partial(1, 0),
                  W_s=W.partial(0, 1), W_t=W.partial(1, 0))


def wk_residual_phi(profile: MetricProfile, t: float, s: float) -> float:
    """Left side of the weakly-Kahler equation in phi, normalized by phi^3."""
    j = profile.jet(t, s)
    a = (j.phi - s * j.phi_s) * (j.phi + (t - s) * j.phi_s) \
        * (j.phi_s - j.phi_t + s * (j.phi_ts + j.phi_ss))
    b = s * (t - s) * j.phi_ss \
        * (j.phi * (j.phi_s - j.phi_t) + s * j.phi_s * (j.phi_t + j.phi_s))
    return (a + b) / j.phi ** 3


def wk_residual_uw(profile: MetricProfile, t: float, s: float) -> float:
    """Left side of the weakly-Kahler equation in U, W (already scale-free)."""
    d = uw(profile, t, s)
    return (s * d.U * (d.U - t) * d.W_s
            - s * (d.U - t) * d.U_s * d.W
            - 2.0 * (d.U - s) * d.U_s)


def lemma_integrability_residual(profile: MetricProfile, t: float, s: float) -> float:
    """s (U_t + U_s) - s^2 (t-s) W_s - U; zero for every profile (phi_ts = phi_st)."""
    d = uw(profile, t, s)
    return s * (d.U_t + d.U_s) - s * s * (t - s) * d.W_s - d.U


def _k_jets(q: dict, phi_sq: float):
    """Order-1 jets of k1, k2, k3; raises DegenerateK1."""
    T, S = q["T"], q["S"]
    phi, phi_t, phi_s = q["phi"], q["phi_t"], q["phi_s"]
    phi_ts, phi_ss = q["phi_ts"], q["phi_ss"]
    head = phi + (T - S) * phi_s
    k1 = (phi - S * phi_s) * head + S * (T - S) * phi * phi_ss
    if abs(k1.value) < K1_DEGENERACY * phi_sq:
        raise DegenerateK1(f"k1 = {k1.value} is degenerate relative to phi^2 = {phi_sq}")
    k2 = ((head + S * (T - S) * phi_ss) * (phi_t + phi_s)
          - S * head * (phi_ts + phi_ss)) / k1
    k3 = (phi * (phi_ts + phi_ss) - phi_s * (phi_t + phi_s)) / k1
    return k1, k2, k3


def k2_k3_identity_residual(profile: MetricProfile, t: float, s: float) -> float:
    """dk2/ds + U dk3/ds; identically zero for every unitary-invariant profile."""
    j = profile.jet(t, s)
    q = _order1_jets(j, t, s)
    _, k2, k3 = _k_jets(q, j.phi * j.phi)
    U = (s * j.phi + s * (t - s) * j.phi_s) / j.phi
    return k2.partial(0, 1) + U * k3.partial(0, 1)


def holomorphic_curvature_closed(profile: MetricProfile, pv: PointVector) -> float:
    """K_F from the general closed form in k2, k3 and their (t, s)-derivatives."""
    t, s = pv.t, pv.s
    j = profile.jet(t, s)
    q = _order1_jets(j, t, s)
    _, k2, k3 = _k_jets(q, j.phi * j.phi)
    U = (s * j.phi + s * (t - s) * j.phi_s) / j.phi
    term2 = s * (k2.partial(1, 0) + k2.partial(0, 1)) + k2.value
    term3 = s * (k3.partial(1, 0) + k3.partial(0, 1)) + 2.0 * k3.value
    return -(2.0 / j.phi) * (term2 + U * term3)


def holomorphic_curvature_wk(profile: MetricProfile, pv: PointVector) -> float:
    """K_F under the weakly-Kahler condition, in U and W only.

    The precondition is enforced by evaluating the weakly-Kahler residual at
    the same (t, s) rather than trusting the profile's family tag.
    """
    t, s = pv.t, pv.s
    d = uw(profile, t, s)
    residual = (s * d.U * (d.U - t) * d.W_s
                - s * (d.U - t) * d.U_s * d.W
                - 2.0 * (d.U - s) * d.U_s)
    if abs(residual) >= WK_RESIDUAL_GATE:
        raise NotWeaklyKahler(
            f"weakly-Kahler residual {residual:.3e} exceeds gate {WK_RESIDUAL_GATE:.1e}")
    if abs(d.U_s) < US_DEGENERACY:
        raise DegenerateUs(f"U_s = {d.U_s} is degenerate")
    phi = profile.value(t, s)
    return -(2.0 / phi) * (s * (d.W_t + d.W_s)
                           - s * s * (t - s) * d.W_s ** 2 / d.U_s
                           + d.W)


def holomorphic_curvature_direct(profile: MetricProfile, pv: PointVector,
                                 cfg: FDConfig | None = None) -> float:
    """K_F from its definition, by Wirtinger FD of the closed-form spray.

    K_F = -(2/G^2) G_g delta_nubar(2 GG^g) vbar^nu with the conjugated
    horizontal derivative delta_nubar = d/dzbar^nu - conj(N^m_nu) d/dvbar^m.
    Both contractions are directional: contracting vbar^nu turns the
    z-derivative term into the anti-holomorphic derivative of
    tau -> spray(z + tau v, v) at tau = 0, and conj(N^m_nu) vbar^nu = conj(2 GG^m)
    turns the v-derivative term into the same along tau -> spray(z, v + tau 2GG).
    """
    cfg = cfg or FDConfig()
    z, v = pv.z, pv.v
    spray0 = _spray_vector(profile, z, v)
    ga = _g_alpha(profile, z, v)
    G = pv.r * profile.value(pv.t, pv.s)

    # d/dtaubar of spray(z + tau v, v): equals sum_nu d(2GG^g)/dzbar^nu vbar^nu / scale
    scale_z = max(1.0, float(np.max(np.abs(v))))
    dz = v / scale_z
    _, anti_z = wirtinger_gradient(
        lambda tau: _spray_vector(profile, z + tau[0] * dz, v),
        np.zeros(1, dtype=complex), cfg)
    term1 = anti_z[0] * scale_z

    scale_v = max(1.0, float(np.max(np.abs(spray0))))
    if scale_v == 0.0 or not np.any(spray0):
        term2 = np.zeros_like(spray0)
    else:
        dv = spray0 / scale_v
        _, anti_v = wirtinger_gradient(
            lambda tau: _spray_vector(profile, z, v + tau[0] * dv),
            np.zeros(1, dtype=complex), cfg)
        term2 = anti_v[0] * scale_v

    value = -(2.0 / G ** 2) * np.sum(ga * (term1 - term2))
    return float(np.real(value))


def wk_spray_identities_residual(profile: MetricProfile, t: float, s: float):
    """(k1 - U_s phi^2, k2 - (W U_s - U W_s)/U_s, k3 - W_s/U_s).

    These hold for every unitary-invariant profile, with no Kahler hypothesis.
    """
    _check_uw_domain(profile, t, s)
    j = profile.jet(t, s)
    q = _order1_jets(j, t, s)
    k1, k2, k3 = _k_jets(q, j.phi * j.phi)
    d = uw(profile, t, s)
    if abs(d.U_s) < US_DEGENERACY:
        raise DegenerateUs(f"U_s = {d.U_s} is degenerate")
    r1 = k1.value - d.U_s * j.phi * j.phi
    r2 = k2.value - (d.W * d.U_s - d.U * d.W_s) / d.U_s
    r3 = k3.value - d.W_s / d.U_s
    return r1, r2, r3


def kahler_classify(profile: MetricProfile, pv: PointVector,
                    cfg: FDConfig | None = None) -> KahlerReport:
    """Residuals of the three Kahler notions from the connection antisymmetry.

    strong : max |Gamma^a_{b;g} - Gamma^a_{g;b}|               / max|Gamma|
    kahler : max |(Gamma^a_{b;g} - Gamma^a_{g;b}) v^g|         / (max|Gamma| * |v|_1)
    weakly : max |G_a (Gamma^a_{b;g} - Gamma^a_{g;b}) v^g|     / (max|Gamma| * |v|_1 * |G_.|_1)
    """
    cfg = cfg or FDConfig()
    conn = connection_coefficients(profile, pv, cfg)
    levi = levi_closed(profile, pv, cfg)
    gamma = conn.gamma
    delta = gamma - np.transpose(gamma, (0, 2, 1))
    scale_g = max(float(np.max(np.abs(gamma))), 1e-300)
    v_l1 = float(np.sum(np.abs(pv.v)))
    ga_l1 = float(np.sum(np.abs(levi.g_alpha)))
    strong = float(np.max(np.abs(delta))) / scale_g
    delta_v = np.einsum('abg,g->ab', delta, pv.v)
    kahler = float(np.max(np.abs(delta_v))) / (scale_g * v_l1)
    weakly_vec = np.einsum('a,ab->b', levi.g_alpha, delta_v)
    weakly = float(np.max(np.abs(weakly_vec))) / (scale_g * v_l1 * ga_l1)
    return KahlerReport(strong_residual=strong, kahler_residual=kahler,
                        weakly_residual=weakly)


def curvature_report(profile: MetricProfile, pv: PointVector,
                     cfg: FDConfig | None = None) -> CurvatureReport:
    """K_F by all applicable methods plus the maximal pairwise deviation.

    The weakly-Kahler value is included only where the residual gate admits it.
    """
    cfg = cfg or FDConfig()
    kf_closed = holomorphic_curvature_closed(profile, pv)
    kf_direct = holomorphic_curvature_direct(profile, pv, cfg)
    try:
        kf_wk = holomorphic_curvature_wk(profile, pv)
    except (NotWeaklyKahler, DegenerateUs, DomainViolation):
        kf_wk = None
    values = [kf_direct, kf_closed] + ([kf_wk] if kf_wk is not None else [])
    dev = max(abs(a - b) for i, a in enumerate(values) for b in values[i + 1:])
    return CurvatureReport(kf_direct=kf_direct, kf_closed=kf_closed,
                           kf_wk=kf_wk, pairwise_dev=dev)
