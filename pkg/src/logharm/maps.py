"""Log-harmonic mappings and their Schwarzian-type derivatives.

A mapping here is f(z) = z^((b+1)m) h(z) conj(z^(b m) g(z)) on the unit
disk, with integer vanishing order m >= 0, exponent parameter b with
Re(b) > -1/2, and analytic factors h, g given as expression trees.  For
real b this is the familiar z^m |z|^(2 b m) h(z) conj(g(z)); the powered
form is used throughout because every closed formula below (dilatation,
Jacobian, pre-Schwarzian, Schwarzian) is then an exact identity for
complex b as well, principal branches understood.

For m = 0 the mapping degenerates to h * conj(g) and all b-terms drop
out.  The vanishing-order case m >= 1 concentrates its derivative
singularities at the origin, so derivative-level operators require
|z| >= 1e-8 there; value-level operators take the z -> 0 limit instead.

The second (analytic) dilatation is

    omega = (z g'/g + b m) / ((b+1) m + z h'/h),

reducing to g' h / (h' g) when m = 0.  Writing H = z h' + (b+1) m h and
G = z^((2b+1)m - 1) g (just G = g, H = h' when m = 0), the locally
univalent factorization gives

    J_f   = |H G|^2 (1 - |omega|^2),
    P_f   = G'/G + H'/H - conj(omega) omega' / (1 - |omega|^2),
    S_f   = S + (analytic-correction terms in omega),

where S is the Schwarzian of the analytic function with derivative H*G.
Composition with an analytic disk automorphism-like psi uses the chain
rule P_(f o psi) = (P_f o psi) psi' + psi''/psi' (the psi' factor is
forced by J_(f o psi) = (J_f o psi) |psi'|^2; see the finite-difference
tests).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CriticalPoint,
    DegenerateDenominator,
    NotSensePreserving,
    PoleEncountered,
)
from .expr import Expr, eval_jet, parse
from .jets import Jet, zpow_jet, zpow_value

ORIGIN_RADIUS = 1e-8  # derivative ops for m >= 1 stay outside this disk


def _as_complex(value) -> complex:
    return complex(value)


@dataclass(frozen=True)
class LogHarmonicMap:
    """Representation data (m, b, h, g) of a log-harmonic mapping."""

    m: int
    beta: complex
    h: Expr
    g: Expr

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 0:
            raise ValueError("vanishing order m must be a non-negative integer")
        beta = complex(self.beta)
        object.__setattr__(self, "beta", beta)
        if beta.real <= -0.5:
            raise ValueError(f"Re(beta) must exceed -1/2, got {beta}")
        h0 = _as_complex(eval_jet(self.h, 0j, order=1).d0)
        g0 = _as_complex(eval_jet(self.g, 0j, order=1).d0)
        if self.m >= 1:
            if abs(g0 - 1) > 1e-9:
                raise ValueError(f"g(0) must be 1 for m >= 1, got {g0}")
            if abs(h0) <= 1e-9:
                raise ValueError("h(0) must be nonzero for m >= 1")
        else:
            if abs(g0) <= 1e-12:
                raise ValueError("g(0) must be nonzero for m = 0")
            h1 = _as_complex(eval_jet(self.h, 0j, order=1).d1)
            if abs(h0) <= 1e-12 and abs(h1) <= 1e-12:
                # h may vanish at 0 only simply (local univalence of h)
                raise ValueError("h must have h(0) != 0 or h'(0) != 0 for m = 0")

    @classmethod
    def from_strings(cls, m: int, beta, h: str, g: str) -> "LogHarmonicMap":
        return cls(m, complex(beta), parse(h), parse(g))

    @property
    def is_vanishing(self) -> bool:
        return self.m >= 1


@dataclass(frozen=True)
class LocalData:
    """Everything the derivative formulas need at one point.

    ``G_jet``/``H_jet`` hold value, first, and second derivative of the
    factorization factors (order-2 jets; a third derivative would need
    h'''').  ``phi_logderiv`` is G'/G + H'/H, the pre-Schwarzian of the
    analytic function whose derivative is H*G.
    """

    z: complex
    omega: complex
    omega_d1: complex
    omega_d2: complex
    G_jet: Jet
    H_jet: Jet
    phi_logderiv: complex
    jacobian: float


def _raw_local(f: LogHarmonicMap, z):
    """(omega_jet, G_jet, H_jet) at z; works on scalars and arrays alike."""
    hj = eval_jet(f.h, z)
    gj = eval_jet(f.g, z)
    hp = hj.derivative()
    gp = gj.derivative()
    if f.m == 0:
        omega = (gp * hj) / (hp * gj)
        return omega, gj.truncate(2), hp
    beta, m = f.beta, f.m
    zj = Jet.variable(z, 2)
    logh = hp / hj
    logg = gp / gj
    den = (beta + 1) * m + zj * logh
    omega = (zj * logg + beta * m) / den
    H = zj * hp + (beta + 1) * m * hj
    G = zpow_jet(z, (2 * beta + 1) * m - 1, order=2) * gj
    return omega, G, H


def local_data(f: LogHarmonicMap, z: complex) -> LocalData:
    """Validated scalar bundle; raises on poles and degenerate denominators."""
    z = complex(z)
    if f.m >= 1 and abs(z) < ORIGIN_RADIUS:
        raise PoleEncountered("derivative data needs |z| >= 1e-8 for m >= 1", point=z)
    if f.m >= 1:
        hj = eval_jet(f.h, z, order=1)
        den = (f.beta + 1) * f.m + z * _as_complex(hj.d1) / _as_complex(hj.d0)
        if abs(den) < 1e-14:
            raise DegenerateDenominator("(beta+1)m + z h'/h vanished", point=z)
    omega, G, H = _raw_local(f, z)
    w0 = _as_complex(omega.d0)
    data = LocalData(
        z=z,
        omega=w0,
        omega_d1=_as_complex(omega.d1),
        omega_d2=_as_complex(omega.d2),
        G_jet=G,
        H_jet=H,
        phi_logderiv=_as_complex(G.d1 / G.d0 + H.d1 / H.d0),
        jacobian=float(abs(_as_complex(H.d0) * _as_complex(G.d0)) ** 2 * (1 - abs(w0) ** 2)),
    )
    for v in (data.omega, data.omega_d1, data.omega_d2, data.phi_logderiv):
        if not np.isfinite(v):
            raise PoleEncountered("non-finite local data", point=z)
    return data


# -- pointwise operators --------------------------------------------------


def dilatation(f: LogHarmonicMap, z: complex) -> complex:
    z = complex(z)
    if f.m >= 1 and z == 0:
        return f.beta / (f.beta + 1)
    hj = eval_jet(f.h, z, order=1)
    gj = eval_jet(f.g, z, order=1)
    if f.m == 0:
        den = _as_complex(hj.d1) * _as_complex(gj.d0)
        if den == 0:
            raise DegenerateDenominator("h' g vanished", point=z)
        return _as_complex(gj.d1) * _as_complex(hj.d0) / den
    num = z * _as_complex(gj.d1) / _as_complex(gj.d0) + f.beta * f.m
    den = (f.beta + 1) * f.m + z * _as_complex(hj.d1) / _as_complex(hj.d0)
    if abs(den) < 1e-14:
        raise DegenerateDenominator("(beta+1)m + z h'/h vanished", point=z)
    return num / den


def jacobian(f: LogHarmonicMap, z: complex) -> float:
    """|f_z|^2 - |f_zbar|^2 in closed form; positive iff sense-preserving
    and locally univalent at z."""
    z = complex(z)
    if f.m >= 1 and z == 0:
        w = (2 * f.beta + 1) * f.m - 1
        G0 = zpow_value(0j, w) * _as_complex(eval_jet(f.g, 0j, order=0).d0)
        H0 = (f.beta + 1) * f.m * _as_complex(eval_jet(f.h, 0j, order=0).d0)
        om = dilatation(f, 0j)
        return float(abs(H0 * G0) ** 2 * (1 - abs(om) ** 2))
    omega, G, H = _raw_local(f, z)
    w0 = _as_complex(omega.d0)
    return float(abs(_as_complex(H.d0) * _as_complex(G.d0)) ** 2 * (1 - abs(w0) ** 2))


def map_value(f: LogHarmonicMap, z):
    """f(z) itself.  Accepts arrays; the origin maps to 0 whenever m >= 1."""
    if isinstance(z, np.ndarray):
        hv = eval_jet(f.h, z, order=0).d0
        gv = eval_jet(f.g, z, order=0).d0
        if f.m == 0:
            return hv * np.conj(gv)
        a = (f.beta + 1) * f.m
        b = f.beta * f.m
        logz = np.log(z)
        val = np.exp(a * logz) * hv * np.conj(np.exp(b * logz) * gv)
        return np.where(z == 0, 0j, val)  # Re((b+1)m) > m/2 > 0 forces the limit 0
    z = complex(z)
    hv = _as_complex(eval_jet(f.h, z, order=0).d0)
    gv = _as_complex(eval_jet(f.g, z, order=0).d0)
    if f.m == 0:
        return hv * gv.conjugate()
    zp = zpow_value(z, (f.beta + 1) * f.m)
    zq = zpow_value(z, f.beta * f.m)
    return zp * hv * (zq * gv).conjugate()


def wirtinger(f: LogHarmonicMap, z: complex) -> tuple[complex, complex, complex]:
    """(f_z, f_zbar, f(z)).  Satisfies |f_z|^2 - |f_zbar|^2 = jacobian(f, z)."""
    z = complex(z)
    hj = eval_jet(f.h, z, order=1)
    gj = eval_jet(f.g, z, order=1)
    h0, h1 = _as_complex(hj.d0), _as_complex(hj.d1)
    g0, g1 = _as_complex(gj.d0), _as_complex(gj.d1)
    if f.m == 0:
        return h1 * g0.conjugate(), h0 * g1.conjugate(), h0 * g0.conjugate()
    beta, m = f.beta, f.m
    zp_a = zpow_value(z, (beta + 1) * m)        # z^((b+1)m)
    zq_b = zpow_value(z, beta * m)              # z^(b m)
    f_val = zp_a * h0 * (zq_b * g0).conjugate()
    zp_a1 = zpow_value(z, (beta + 1) * m - 1)
    zq_b1 = zpow_value(z, beta * m - 1)
    H0 = z * h1 + (beta + 1) * m * h0
    f_z = zp_a1 * H0 * (zq_b * g0).conjugate()
    f_zbar = zp_a * h0 * (zq_b1 * (z * g1 + beta * m * g0)).conjugate()
    return f_z, f_zbar, f_val


def _sigma(data: LocalData) -> complex:
    denom = 1 - abs(data.omega) ** 2
    return data.omega.conjugate() * data.omega_d1 / denom


def _require_sense_preserving(f: LogHarmonicMap, data: LocalData):
    mod = abs(data.omega)
    if mod >= 1:
        raise NotSensePreserving(point=data.z, modulus=mod)


def pre_schwarzian(f: LogHarmonicMap, z: complex) -> complex:
    """P_f = d/dz log J_f, via the closed form G'/G + H'/H - conj(w)w'/(1-|w|^2)."""
    data = local_data(f, z)
    _require_sense_preserving(f, data)
    return data.phi_logderiv - _sigma(data)


def phi_family(f: LogHarmonicMap, z: complex) -> tuple[complex, complex]:
    """(P, S) of the analytic function with derivative H*G (never integrated)."""
    data = local_data(f, z)
    return _phi_pair(data)


def _phi_pair(data: LocalData) -> tuple[complex, complex]:
    G0, G1, G2 = data.G_jet.d0, data.G_jet.d1, data.G_jet.d2
    H0, H1, H2 = data.H_jet.d0, data.H_jet.d1, data.H_jet.d2
    p = data.phi_logderiv
    s = (
        G2 / G0
        - 1.5 * (G1 / G0) ** 2
        + H2 / H0
        - 1.5 * (H1 / H0) ** 2
        - (G1 * H1) / (G0 * H0)
    )
    return _as_complex(p), _as_complex(s)


def schwarzian(f: LogHarmonicMap, z: complex) -> complex:
    """S_f = dP_f/dz - P_f^2 / 2, in closed form."""
    data = local_data(f, z)
    _require_sense_preserving(f, data)
    p_phi, s_phi = _phi_pair(data)
    denom = 1 - abs(data.omega) ** 2
    sigma = _sigma(data)
    wbar = data.omega.conjugate()
    return (
        s_phi
        - 1.5 * sigma ** 2
        + (wbar / denom) * (data.omega_d1 * p_phi - data.omega_d2)
    )


def _dilatation_jet(f: LogHarmonicMap, z: complex) -> Jet:
    # unlike the full local bundle, the dilatation jet is regular at the
    # origin even when the map vanishes there
    hj = eval_jet(f.h, z)
    gj = eval_jet(f.g, z)
    hp = hj.derivative()
    gp = gj.derivative()
    if f.m == 0:
        return (gp * hj) / (hp * gj)
    zj = Jet.variable(z, 2)
    den = (f.beta + 1) * f.m + zj * (hp / hj)
    return (zj * (gp / gj) + f.beta * f.m) / den


def dbar_pre_schwarzian(f: LogHarmonicMap, z: complex) -> complex:
    """d/dzbar of P_f: always -|omega'|^2 / (1-|omega|^2)^2, real and <= 0.

    Needs only the dilatation jet, so it is evaluable at the origin for
    every m (the other derivative operators are not).
    """
    z = complex(z)
    try:
        om = _dilatation_jet(f, z)
    except ZeroDivisionError as exc:
        raise PoleEncountered(str(exc), point=z) from None
    w0, w1 = _as_complex(om.d0), _as_complex(om.d1)
    if not (np.isfinite(w0) and np.isfinite(w1)):
        raise PoleEncountered("non-finite dilatation jet", point=z)
    mod = abs(w0)
    if mod >= 1:
        raise NotSensePreserving(point=z, modulus=mod)
    denom = 1 - mod ** 2
    return complex(-abs(w1) ** 2 / denom ** 2)


def dbar_schwarzian(f: LogHarmonicMap, z: complex) -> complex:
    """d/dzbar of S_f in closed form (vanishes iff omega is constant)."""
    data = local_data(f, z)
    _require_sense_preserving(f, data)
    p_phi, _ = _phi_pair(data)
    denom = 1 - abs(data.omega) ** 2
    w1 = data.omega_d1
    return w1.conjugate() * (
        (w1 * p_phi - data.omega_d2) / denom ** 2
        - 3 * w1 ** 2 * data.omega.conjugate() / denom ** 3
    )


# -- analytic specializations --------------------------------------------


def analytic_pre_schwarzian(e: Expr, z: complex) -> complex:
    """e''/e' for an analytic expression."""
    j = eval_jet(e, complex(z), order=2)
    d1 = _as_complex(j.d1)
    if d1 == 0:
        raise CriticalPoint("derivative vanishes", point=complex(z))
    return _as_complex(j.d2) / d1


def analytic_schwarzian(e: Expr, z: complex) -> complex:
    """e'''/e' - (3/2)(e''/e')^2 for an analytic expression."""
    j = eval_jet(e, complex(z), order=3)
    d1 = _as_complex(j.d1)
    if d1 == 0:
        raise CriticalPoint("derivative vanishes", point=complex(z))
    q = _as_complex(j.d2) / d1
    return _as_complex(j.d3) / d1 - 1.5 * q ** 2


def hg_epsilon_pre_schwarzian(f: LogHarmonicMap, eps: complex, z: complex) -> complex:
    """Pre-Schwarzian of the analytic family member h * g^eps (m = 0 only).

    Closed form h''/h' + g'/g + (eps-1) g'/g + eps omega'/(1 + eps omega);
    for eps = 1 this is the pre-Schwarzian of h*g, for eps = -1 of h/g.
    """
    if f.m != 0:
        raise ValueError("the h g^eps family is defined for m = 0 mappings")
    z = complex(z)
    eps = complex(eps)
    hj = eval_jet(f.h, z)
    gj = eval_jet(f.g, z)
    hp = hj.derivative()
    omega = (gj.derivative() * hj) / (hp * gj)
    w0, w1 = _as_complex(omega.d0), _as_complex(omega.d1)
    den = 1 + eps * w0
    if abs(den) < 1e-14:
        raise DegenerateDenominator("1 + eps*omega vanished", point=z)
    logg = _as_complex(gj.d1) / _as_complex(gj.d0)
    logh2 = _as_complex(hp.d1) / _as_complex(hp.d0)
    return logh2 + logg + (eps - 1) * logg + eps * w1 / den


def compose_with_analytic(f: LogHarmonicMap, psi: Expr, z: complex) -> complex:
    """P of f o psi at z (m = 0), by the chain rule (P_f o psi) psi' + psi''/psi'."""
    if f.m != 0:
        raise ValueError("composition is supported for m = 0 mappings")
    z = complex(z)
    pj = eval_jet(psi, z, order=2)
    p1 = _as_complex(pj.d1)
    if p1 == 0:
        raise CriticalPoint("psi' vanishes", point=z)
    w = _as_complex(pj.d0)
    if abs(w) >= 1:
        raise ValueError(f"psi(z) = {w} leaves the unit disk")
    return pre_schwarzian(f, w) * p1 + _as_complex(pj.d2) / p1


# -- array-path field evaluators (grid sweeps) ---------------------------


def _finite_or_nan(arr):
    return np.where(np.isfinite(arr), arr, np.nan + 1j * np.nan)


def _field_array(v, z):
    # constant subexpressions evaluate to scalar jets; keep field output
    # shaped like its input
    v = np.asarray(v, dtype=complex)
    if v.shape != z.shape:
        v = np.broadcast_to(v, z.shape)
    return _finite_or_nan(v)


def _array_local(f: LogHarmonicMap, z: np.ndarray):
    z = np.asarray(z, dtype=complex)
    if f.m >= 1:
        z = np.where(np.abs(z) < ORIGIN_RADIUS, np.nan + 1j * np.nan, z)
    omega, G, H = _raw_local(f, z)
    return z, omega, G, H


def pre_schwarzian_field(f: LogHarmonicMap):
    """Vectorized z -> P_f(z); non-evaluable points come back NaN."""

    def field(z):
        if not isinstance(z, np.ndarray):
            try:
                return pre_schwarzian(f, z)
            except (PoleEncountered, NotSensePreserving, DegenerateDenominator, ZeroDivisionError):
                return complex(np.nan, np.nan)
        with np.errstate(all="ignore"):
            z, omega, G, H = _array_local(f, z)
            w0, w1 = omega.d0, omega.d1
            denom = 1 - np.abs(w0) ** 2
            p = G.d1 / G.d0 + H.d1 / H.d0 - np.conj(w0) * w1 / denom
            p = np.where(np.abs(w0) < 1, p, np.nan + 1j * np.nan)
        return _field_array(p, z)

    return field


def schwarzian_field(f: LogHarmonicMap):
    """Vectorized z -> S_f(z); non-evaluable points come back NaN."""

    def field(z):
        if not isinstance(z, np.ndarray):
            try:
                return schwarzian(f, z)
            except (PoleEncountered, NotSensePreserving, DegenerateDenominator, ZeroDivisionError):
                return complex(np.nan, np.nan)
        with np.errstate(all="ignore"):
            z, omega, G, H = _array_local(f, z)
            w0, w1, w2 = omega.d0, omega.d1, omega.d2
            G0, G1, G2 = G.d0, G.d1, G.d2
            H0, H1, H2 = H.d0, H.d1, H.d2
            p_phi = G1 / G0 + H1 / H0
            s_phi = (
                G2 / G0
                - 1.5 * (G1 / G0) ** 2
                + H2 / H0
                - 1.5 * (H1 / H0) ** 2
                - (G1 * H1) / (G0 * H0)
            )
            denom = 1 - np.abs(w0) ** 2
            sigma = np.conj(w0) * w1 / denom
            s = s_phi - 1.5 * sigma ** 2 + (np.conj(w0) / denom) * (w1 * p_phi - w2)
            s = np.where(np.abs(w0) < 1, s, np.nan + 1j * np.nan)
        return _field_array(s, z)

    return field


def analytic_pre_schwarzian_field(e: Expr):
    def field(z):
        if not isinstance(z, np.ndarray):
            try:
                return analytic_pre_schwarzian(e, z)
            except (PoleEncountered, CriticalPoint, ZeroDivisionError):
                return complex(np.nan, np.nan)
        with np.errstate(all="ignore"):
            j = eval_jet(e, z, order=2)
            p = j.d2 / j.d1
        return _field_array(p, z)

    return field


def analytic_schwarzian_field(e: Expr):
    def field(z):
        if not isinstance(z, np.ndarray):
            try:
                return analytic_schwarzian(e, z)
            except (PoleEncountered, CriticalPoint, ZeroDivisionError):
                return complex(np.nan, np.nan)
        with np.errstate(all="ignore"):
            j = eval_jet(e, z, order=3)
            q = j.d2 / j.d1
            s = j.d3 / j.d1 - 1.5 * q ** 2
        return _field_array(s, z)

    return field


def hg_epsilon_field(f: LogHarmonicMap, eps: complex):
    """Vectorized pre-Schwarzian of h * g^eps (m = 0)."""
    if f.m != 0:
        raise ValueError("the h g^eps family is defined for m = 0 mappings")
    eps = complex(eps)

    def field(z):
        if not isinstance(z, np.ndarray):
            try:
                return hg_epsilon_pre_schwarzian(f, eps, z)
            except (PoleEncountered, DegenerateDenominator, ZeroDivisionError):
                return complex(np.nan, np.nan)
        with np.errstate(all="ignore"):
            hj = eval_jet(f.h, z)
            gj = eval_jet(f.g, z)
            hp = hj.derivative()
            omega = (gj.derivative() * hj) / (hp * gj)
            logg = gj.d1 / gj.d0
            p = hp.d1 / hp.d0 + logg + (eps - 1) * logg + eps * omega.d1 / (1 + eps * omega.d0)
        return _field_array(p, z)

    return field
