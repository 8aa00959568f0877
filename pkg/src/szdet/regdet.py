"""Completed zeta functions, superzeta values, and regularized determinants.

The completed functions
    Z+(z) = Z(z) / (G1(z) Gamma(z - 1/2)^k),      Z-(z) = Z+(z) phi(z)
carry only the spectral/resonance zeros.  Their superzeta functions are
regular at s = 0 with the closed degree-two polynomial values

    SZ+(0, z) = -(h vol/2pi) z^2 - (a1~ + k) z + k - a0~,
    SZ-(0, z) = -(h vol/2pi) z^2 - (a1~ + k) z - a0~ + k/2,

and the superzeta regularized products are

    D+(z) = exp(b1 z + b0 + (k/2) log 2pi) Z+(z),
    D-(z) = exp((b1 - c1) z + b0 + (k/2) log 2 - c2) Z-(z),

whose product is the square of the regularized determinant of
Delta - z(1-z)I:

    det^2 = exp((2 b1 - c1) z + 2 b0 + (k/2) log 4pi - c2) phi(z)
            * (Z(z) / (G1(z) Gamma(z-1/2)^k))^2 = D+ D-.

The scattering determinant is recovered as
phi(z) = pi^(k/2) exp(c1 z + c2) D-(z)/D+(z).

Everything is evaluated on the Euler-product domain Re(z) > 1; values
elsewhere require a caller-supplied continuation provider (this module never
fabricates analytic continuation it cannot certify).  A generic "toy" Voros
engine over an explicit zero list, with the Hurwitz zeta function as its
oracle, lives at the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Protocol

from mpmath import mp

from .errors import ConvergenceError, CutError, ProviderDomainError, SignatureError
from .gfuncs import ExpansionCoefficients, g1_coefficients, log_g1
from .numerics import (
    DEFAULT_PREC,
    _is_real,
    _real,
    _rounded,
    frac_to_mpf,
    log_gamma,
    plog,
    to_scalar,
)
from .orbifold import OrbifoldData, a_chi, degree_of_singularity, vol_over_2pi
from .zetas import (
    GeodesicSource,
    ScatteringModel,
    ValueWithTail,
    scattering_constants,
    scattering_phi,
    selberg_log_z,
)


@dataclass
class SurfaceContext:
    """Orbifold + geodesic source + scattering model, with derived constants.

    The degree of singularity implied by the scattering model must match the
    representation's, which is checked at construction.  Selberg log Z values
    are memoized per evaluation point.
    """

    orb: OrbifoldData
    source: GeodesicSource
    scattering: ScatteringModel
    prec: int = DEFAULT_PREC
    cutoff_norm: object = 10**6
    coeffs: ExpansionCoefficients = field(init=False)
    constants: tuple = field(init=False)
    _logz_cache: dict = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        self.constants = scattering_constants(self.scattering)
        k_model = self.constants[0]
        k_rep = degree_of_singularity(self.orb.rep)
        if k_model != k_rep:
            raise SignatureError(
                f"scattering degree of singularity {k_model} does not match "
                f"the representation's {k_rep}"
            )
        self.coeffs = g1_coefficients(self.orb, self.prec)

    @property
    def k(self) -> int:
        return self.constants[0]

    def log_z(self, z) -> ValueWithTail:
        key = to_scalar(z, self.prec)
        if key not in self._logz_cache:
            self._logz_cache[key] = selberg_log_z(
                self.source, key, self.cutoff_norm, self.prec
            )
        return self._logz_cache[key]


def _log_z_plus(ctx: SurfaceContext, z) -> ValueWithTail:
    wp = ctx.prec + 16
    with mp.workprec(wp):
        w = to_scalar(z, wp)
        lz, tail = ctx.log_z(w)
        val = lz - log_g1(ctx.orb, w, wp) - ctx.k * log_gamma(w - mp.mpf(1) / 2, wp)
    return ValueWithTail(_rounded(ctx.prec, val), tail)


def z_plus(ctx: SurfaceContext, z):
    """Z+(z) = Z(z) / (G1(z) Gamma(z-1/2)^k) on Re(z) > 1."""
    with mp.workprec(ctx.prec + 8):
        return _rounded(ctx.prec, mp.exp(_log_z_plus(ctx, z).value))


def z_minus(ctx: SurfaceContext, z):
    """Z-(z) = Z+(z) phi(z)."""
    with mp.workprec(ctx.prec + 8):
        return _rounded(
            ctx.prec, z_plus(ctx, z) * scattering_phi(ctx.scattering, z, ctx.prec)
        )


def superzeta_zero_poly(ctx: SurfaceContext, sign: int) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (c2, c1, c0) of the degree-two polynomial SZ_sign(0, z)."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    hv = ctx.orb.dim * vol_over_2pi(ctx.orb.signature)
    k = Fraction(ctx.k)
    c2 = -hv
    c1 = -(ctx.coeffs.a1t + k)
    c0 = (k if sign > 0 else k / 2) - ctx.coeffs.a0t
    return (c2, c1, c0)


def superzeta_at_zero(ctx: SurfaceContext, z, sign: int, prec: Optional[int] = None):
    """SZ+-(0, z) evaluated from the exact polynomial coefficients."""
    prec = prec or ctx.prec
    c2, c1, c0 = superzeta_zero_poly(ctx, sign)
    with mp.workprec(prec + 8):
        w = to_scalar(z, prec + 8)
        val = frac_to_mpf(c2) * w * w + frac_to_mpf(c1) * w + frac_to_mpf(c0)
    return _rounded(prec, val)


def _prefactor_plus(ctx: SurfaceContext, w):
    return ctx.coeffs.b1 * w + ctx.coeffs.b0 + mp.mpf(ctx.k) / 2 * mp.log(2 * mp.pi)


def _prefactor_minus(ctx: SurfaceContext, w):
    _, c1, c2 = ctx.constants
    return (
        (ctx.coeffs.b1 - c1) * w
        + ctx.coeffs.b0
        + mp.mpf(ctx.k) / 2 * mp.log(2)
        - c2
    )


def d_plus(ctx: SurfaceContext, z):
    """D+(z) = exp(b1 z + b0 + (k/2) log 2pi) Z+(z)."""
    with mp.workprec(ctx.prec + 16):
        w = to_scalar(z, ctx.prec + 16)
        val = mp.exp(_prefactor_plus(ctx, w) + _log_z_plus(ctx, w).value)
    return _rounded(ctx.prec, val)


def d_minus(ctx: SurfaceContext, z):
    """D-(z) = exp((b1 - c1) z + b0 + (k/2) log 2 - c2) Z-(z)."""
    with mp.workprec(ctx.prec + 16):
        w = to_scalar(z, ctx.prec + 16)
        val = mp.exp(_prefactor_minus(ctx, w) + _log_z_plus(ctx, w).value)
        val *= scattering_phi(ctx.scattering, w, ctx.prec + 16)
    return _rounded(ctx.prec, val)


def det_squared(ctx: SurfaceContext, z):
    """det^2(Delta - z(1-z)I) by the explicit formula; equals D+ D-."""
    _, c1, c2 = ctx.constants
    with mp.workprec(ctx.prec + 16):
        w = to_scalar(z, ctx.prec + 16)
        pref = (
            (2 * ctx.coeffs.b1 - c1) * w
            + 2 * ctx.coeffs.b0
            + mp.mpf(ctx.k) / 2 * mp.log(4 * mp.pi)
            - c2
        )
        val = (
            mp.exp(pref + 2 * _log_z_plus(ctx, w).value)
            * scattering_phi(ctx.scattering, w, ctx.prec + 16)
        )
    return _rounded(ctx.prec, val)


def phi_from_superzeta(ctx: SurfaceContext, z):
    """pi^(k/2) exp(c1 z + c2) D-(z) / D+(z); recovers scattering_phi."""
    _, c1, c2 = ctx.constants
    with mp.workprec(ctx.prec + 16):
        w = to_scalar(z, ctx.prec + 16)
        val = (
            mp.pi ** (mp.mpf(ctx.k) / 2)
            * mp.exp(c1 * w + c2)
            * d_minus(ctx, w)
            / d_plus(ctx, w)
        )
    return _rounded(ctx.prec, val)


# ---------------------------------------------------------------------------
# Continuation providers and the symmetric functional equation
# ---------------------------------------------------------------------------


class ContinuationProvider(Protocol):
    """Supplies log Z and log phi wherever it can certify them."""

    def log_selberg_z(self, z, prec: int): ...

    def log_scattering_phi(self, z, prec: int): ...


@dataclass
class EulerProductProvider:
    """The built-in provider; certified only on the Euler-product domain."""

    ctx: SurfaceContext

    def _check(self, z):
        if _real(to_scalar(z, 64)) <= 1:
            raise ProviderDomainError(
                f"Euler-product provider cannot evaluate at Re(z) <= 1 (z = {z})"
            )

    def log_selberg_z(self, z, prec: int):
        self._check(z)
        return self.ctx.log_z(to_scalar(z, prec)).value

    def log_scattering_phi(self, z, prec: int):
        self._check(z)
        with mp.workprec(prec + 8):
            return _rounded(prec, plog(scattering_phi(self.ctx.scattering, z, prec + 8)))


@dataclass
class TabulatedProvider:
    """Values read from a continuation table, matched within a tolerance."""

    rows: tuple  # of (z, log_z, log_phi)
    tol: float = 1e-12

    def _find(self, z, prec: int):
        w = to_scalar(z, prec)
        for zz, lz, lp in self.rows:
            if abs(w - zz) <= self.tol:
                return lz, lp
        raise ProviderDomainError(f"no tabulated continuation data at z = {z}")

    def log_selberg_z(self, z, prec: int):
        return self._find(z, prec)[0]

    def log_scattering_phi(self, z, prec: int):
        return self._find(z, prec)[1]


def load_continuation_table(path, prec: int = DEFAULT_PREC) -> TabulatedProvider:
    """Lines: Re(z) Im(z) Re(logZ) Im(logZ) Re(logphi) Im(logphi)."""
    rows = []
    with mp.workprec(prec), open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            v = [mp.mpf(x) for x in line.split()]
            rows.append((mp.mpc(v[0], v[1]), mp.mpc(v[2], v[3]), mp.mpc(v[4], v[5])))
    return TabulatedProvider(rows=tuple(rows))


def _log_dplus_dminus(ctx: SurfaceContext, w, provider, prec: int):
    _, c1, c2 = ctx.constants
    log_z = provider.log_selberg_z(w, prec)
    log_phi = provider.log_scattering_phi(w, prec)
    return (
        (2 * ctx.coeffs.b1 - c1) * w
        + 2 * ctx.coeffs.b0
        + mp.mpf(ctx.k) / 2 * mp.log(4 * mp.pi)
        - c2
        + log_phi
        + 2 * (log_z - log_g1(ctx.orb, w, prec) - ctx.k * log_gamma(w - mp.mpf(1) / 2, prec))
    )


def functional_symmetry_residual(ctx: SurfaceContext, z, provider: ContinuationProvider):
    """exp(-tau z) D+(z) D-(z) - exp(-tau (1-z)) D+(1-z) D-(1-z).

    tau = 2 b1 - c1 + 2 log a(chi).  Zero in exact arithmetic; evaluating the
    second term requires the provider to continue Z and phi to 1 - z, so the
    built-in Euler-product provider refuses for Re(z) > 1 by construction.
    """
    _, c1, _ = ctx.constants
    wp = ctx.prec + 16
    with mp.workprec(wp):
        w = to_scalar(z, wp)
        tau = (
            2 * ctx.coeffs.b1
            - c1
            + 2 * mp.log(a_chi(ctx.orb.rep, ctx.orb.signature.cusps, wp))
        )
        lhs = mp.exp(-tau * w + _log_dplus_dminus(ctx, w, provider, wp))
        rhs = mp.exp(-tau * (1 - w) + _log_dplus_dminus(ctx, 1 - w, provider, wp))
    return _rounded(ctx.prec, lhs - rhs)


# ---------------------------------------------------------------------------
# Generic superzeta engine over an explicit zero list (the toy Voros engine)
# ---------------------------------------------------------------------------


@dataclass
class SuperzetaInput:
    """Explicit zeros y_k (with multiplicity), expansion coefficients of the
    Hadamard-normalized log Delta_f, and an evaluator for Delta_f itself."""

    zeros: tuple
    coeffs: ExpansionCoefficients
    evaluator: Callable


def superzeta_direct(
    inp: SuperzetaInput, s, z, cutoff: Optional[int] = None, prec: int = DEFAULT_PREC
) -> ValueWithTail:
    """sum_k (z - y_k)^(-s) over the listed zeros, with an integral tail bound.

    Convergent for Re(s) > 2 (order-two zero counting); the tail estimate
    assumes the zeros keep roughly their trailing mean spacing.
    """
    wp = prec + 16
    with mp.workprec(wp):
        ss = to_scalar(s, wp)
        w = to_scalar(z, wp)
        if _real(ss) <= 2:
            raise ConvergenceError("superzeta direct sum requires Re(s) > 2")
        zeros = inp.zeros[:cutoff] if cutoff is not None else inp.zeros
        total = mp.mpf(0)
        for y in zeros:
            d = w - to_scalar(y, wp)
            if _is_real(d) and _real(d) <= 0:
                raise CutError(f"z - y_k = {d} lies on the cut (-inf, 0]")
            total += mp.exp(-ss * plog(d))
        if zeros:
            sigma = _real(ss)
            r = abs(w - to_scalar(zeros[-1], wp))
            tailk = min(len(zeros) - 1, 5)
            gap = (
                abs(to_scalar(zeros[-1], wp) - to_scalar(zeros[-1 - tailk], wp)) / tailk
                if tailk
                else mp.mpf(1)
            )
            gap = gap if gap > 0 else mp.mpf(1)
            tail = 2 * r ** (1 - sigma) / ((sigma - 1) * gap)
        else:
            tail = mp.mpf(0)
    return ValueWithTail(_rounded(prec, total), _rounded(prec, tail))


def voros_product(inp: SuperzetaInput, z, prec: int = DEFAULT_PREC):
    """D_f(z) = exp(-(b2 z^2 + b1 z + b0)) Delta_f(z).

    Equals exp(-d/ds SZ_f(s, z)|_{s=0}) whenever log Delta_f satisfies the
    order-two asymptotic template with the supplied coefficients.
    """
    with mp.workprec(prec + 16):
        w = to_scalar(z, prec + 16)
        expo = (
            frac_to_mpf(inp.coeffs.b2) * w * w
            + to_scalar(inp.coeffs.b1, prec + 16) * w
            + to_scalar(inp.coeffs.b0, prec + 16)
        )
        val = mp.exp(-expo) * inp.evaluator(w, prec + 16)
    return _rounded(prec, val)
