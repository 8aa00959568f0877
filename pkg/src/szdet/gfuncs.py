"""The gamma factor G1 for the trivial zeros, and its expansion constants.

G1 is assembled from the Barnes double Gamma function and Gamma functions so
that its divisor on the nonpositive integers is exactly the trivial-zero
multiplicity sequence m_n:

    G1(s) = ((2 pi)^(-s) G(s+1)^2 / Gamma(s))^(h vol/2pi)
            * prod_R d_R^(-h(1-1/d_R) s) Gamma(s)^(h(1-1/d_R))
                     prod_{m=0}^{d_R-1} Gamma((s+m)/d_R)^(-alpha(R,m)/d_R)

with all fractional powers taken through principal logarithms.  log G1 here
always means the sum of the scaled principal logs of the factors, so
exp(log_g1(s)) is G1(s) on the common domain.

The large-s expansion is

    log G1(s) = (h vol/2pi) s^2 (log s - 3/2) + a1~ s (log s - 1) + b1 s
                + a0~ log s + b0 + O(1/s),

whose coefficients are produced by g1_coefficients.  The rational
coefficients (of s^2 terms, s(log s - 1) and log s) are carried as exact
fractions; b1 and b0 are floating values at the requested precision.  Two
published variants of the closed form of the constants disagree in the sign
of two terms; the adopted forms are the unique ones under which the residual
after subtracting the full expansion decays like O(1/s), which the test
suite checks by a high-point constant fit (see b0_candidates and
a0_candidates for the rejected variants).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .elliptic import alpha, beta_coeff, m_n_floor
from .errors import BranchError, SingularityError
from .numerics import (
    DEFAULT_PREC,
    _is_real,
    _real,
    _rounded,
    frac_to_mpf,
    log_barnes_g,
    log_gamma,
    plog,
    to_scalar,
    zeta_prime_minus1,
)
from .orbifold import OrbifoldData, vol_over_2pi


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients of the order-two asymptotic template.

    a2t multiplies z^2 (log z - 3/2), b2 multiplies z^2, a1t multiplies
    z (log z - 1), b1 multiplies z, a0t multiplies log z, b0 is the constant
    term.  a2t, b2, a1t, a0t are exact rationals; b1, b0 are floats computed
    at ``prec`` bits.  Every function in scope has b2 = 0.
    """

    a2t: Fraction
    b2: Fraction
    a1t: Fraction
    b1: object
    a0t: Fraction
    b0: object
    prec: int = DEFAULT_PREC


def _beta_table(orb: OrbifoldData):
    """beta(R, m) for each class R and m in [0, d_R)."""
    return [
        (d, [beta_coeff(d, qs, m) for m in range(d)])
        for d, qs in orb.elliptic_classes()
    ]


@lru_cache(maxsize=None)
def g1_coefficients(orb: OrbifoldData, prec: int = DEFAULT_PREC) -> ExpansionCoefficients:
    """Expansion coefficients of log G1 for the given orbifold."""
    h = orb.dim
    hv = h * vol_over_2pi(orb.signature)
    betas = _beta_table(orb)

    a1t = -hv - sum(
        Fraction(sum(bs), d) for d, bs in betas
    )
    a0t = (
        hv / 3
        - sum(h * Fraction((d - 1) * (d + 1), 6 * d) for d, _ in betas)
        - sum(
            sum(b * (Fraction(m, d) - Fraction(1, 2)) for m, b in enumerate(bs))
            for d, bs in betas
        )
    )
    with mp.workprec(prec + 16):
        log2pi = mp.log(2 * mp.pi)
        b1 = mp.mpf(0)
        b0 = frac_to_mpf(hv) * (2 * zeta_prime_minus1(prec + 16) - log2pi / 2)
        for d, bs in betas:
            logd = mp.log(d)
            log2pid = log2pi + logd
            b1 += frac_to_mpf(Fraction(sum(bs), d)) * logd
            b0 += (
                h
                * (d - 1)
                * (log2pi / (2 * d) - log2pid / 2 + mp.mpf(2 * d - 1) / (3 * d) * logd)
            )
            b0 -= mp.fsum(
                b * (log2pid / 2 - mp.mpf(m) / d * logd) for m, b in enumerate(bs)
            )
        b1 = _rounded(prec, b1)
        b0 = _rounded(prec, b0)
    return ExpansionCoefficients(
        a2t=hv, b2=Fraction(0), a1t=a1t, b1=b1, a0t=a0t, b0=b0, prec=prec
    )


def b0_candidates(orb: OrbifoldData, prec: int = DEFAULT_PREC):
    """(adopted, rejected) values of b0.

    The two closed forms differ in the sign of the h(d_R - 1)/(2 d_R) log 2pi
    term; the adopted one carries +.  They coincide when the orbifold has no
    elliptic classes.
    """
    adopted = g1_coefficients(orb, prec).b0
    h = orb.dim
    with mp.workprec(prec + 16):
        log2pi = mp.log(2 * mp.pi)
        delta = mp.fsum(
            h * (d - 1) * log2pi / d for d in orb.signature.elliptic_orders
        )
        rejected = _rounded(prec, adopted - delta)
    return adopted, rejected


def a0_candidates(orb: OrbifoldData) -> tuple[Fraction, Fraction]:
    """(adopted, rejected) values of a0~, as exact rationals.

    The rejected variant flips the sign of the h (d_R-1)/(2 d_R) part and
    divides the beta sum by d_R; both variants agree when there are no
    elliptic classes.
    """
    coeffs = g1_coefficients(orb)
    h = orb.dim
    hv = h * vol_over_2pi(orb.signature)
    betas = _beta_table(orb)
    rejected = (
        hv / 3
        + sum(
            h * Fraction(d - 1, d) * (Fraction(1, 2) - Fraction(d - 2, 6))
            for d, _ in betas
        )
        - sum(
            sum(
                Fraction(b, d) * (Fraction(m, d) - Fraction(1, 2))
                for m, b in enumerate(bs)
            )
            for d, bs in betas
        )
    )
    return coeffs.a0t, rejected


def _check_off_cut(arg, what: str):
    if _is_real(arg) and _real(arg) <= 0:
        raise BranchError(f"{what} argument {arg} lies on the cut (-inf, 0]")


def log_g1(orb: OrbifoldData, s, prec: int = DEFAULT_PREC):
    """Direct evaluation of log G1(s) as a sum of scaled principal logs.

    Raises SingularityError within 2^(-prec/4) of a nonpositive integer -n
    where m_n != 0, and BranchError if any constituent Gamma/G argument lies
    on the cut (-inf, 0].
    """
    with mp.workprec(prec + 16):
        z = to_scalar(s, prec + 16)
        n_near = int(mp.nint(-_real(z)))
        if n_near >= 0 and abs(z + n_near) < mp.mpf(2) ** (-(prec // 4)):
            if m_n_floor(orb, n_near) != 0:
                raise SingularityError(
                    f"s = {s} within tolerance of the order-{m_n_floor(orb, n_near)} "
                    f"divisor point -{n_near} of G1"
                )
        h = orb.dim
        hv = frac_to_mpf(h * vol_over_2pi(orb.signature))
        _check_off_cut(z, "Gamma")
        lg_s = log_gamma(z, prec + 16)
        val = hv * (
            -z * mp.log(2 * mp.pi)
            + 2 * log_barnes_g(z + 1, prec + 16)
            - lg_s
        )
        for d, qs in orb.elliptic_classes():
            w = mp.mpf(h) * (d - 1) / d
            val += -w * z * mp.log(d) + w * lg_s
            for m in range(d):
                arg = (z + m) / d
                _check_off_cut(arg, "Gamma")
                a = alpha(d, qs, m)
                if a:
                    val -= mp.mpf(a) / d * log_gamma(arg, prec + 16)
    return _rounded(prec, val)


def log_g1_asymptotic(orb: OrbifoldData, s, prec: int = DEFAULT_PREC, coeffs=None):
    """The expansion of log G1 truncated at the constant term."""
    if coeffs is None:
        coeffs = g1_coefficients(orb, prec)
    with mp.workprec(prec + 16):
        z = mp.mpmathify(s)
        lg = plog(z)
        val = (
            frac_to_mpf(coeffs.a2t) * z * z * (lg - mp.mpf(3) / 2)
            + frac_to_mpf(coeffs.a1t) * z * (lg - 1)
            + coeffs.b1 * z
            + frac_to_mpf(coeffs.a0t) * lg
            + coeffs.b0
        )
    return _rounded(prec, val)


def order_at(orb: OrbifoldData, n: int) -> int:
    """Exact order of G1 at s = -n from the divisors of Gamma and Barnes G.

    Independent of the floor-formula multiplicity m_n, with which it must
    agree: the vol block contributes (h vol/2pi)(2n+1), each Gamma(s) power
    contributes -h(1-1/d_R), and the unique m with m = n (mod d_R) in each
    fractional-argument product contributes +alpha(R, m)/d_R.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    hv = orb.dim * vol_over_2pi(orb.signature)
    total = hv * (2 * n + 1)
    for d, qs in orb.elliptic_classes():
        total -= orb.dim * Fraction(d - 1, d)
        total += Fraction(alpha(d, qs, n % d), d)
    assert total.denominator == 1, "divisor order must be an integer"
    return int(total)


# ---------------------------------------------------------------------------
# Appendix variants: G_{q,d}, G_E, and the alternate gamma factor
# ---------------------------------------------------------------------------


def log_g_qd(s, q: int, d: int, prec: int = DEFAULT_PREC):
    """log of G_{q,d}(s) = prod_m G((s-q+m)/d + 1) G((s-(d-q)+m)/d + 1)."""
    with mp.workprec(prec + 16):
        z = mp.mpmathify(s)
        val = mp.mpf(0)
        for m in range(d):
            for shift in (q, d - q):
                val += log_barnes_g((z - shift + m) / d + 1, prec + 16)
    return _rounded(prec, val)


def g_qd(s, q: int, d: int, prec: int = DEFAULT_PREC):
    """G_{q,d}(s); an entire function with zero of order g(n,q,d) at -n."""
    with mp.workprec(prec + 8):
        return _rounded(prec, mp.exp(log_g_qd(s, q, d, prec + 8)))


def order_g_qd_at(n: int, q: int, d: int) -> int:
    """Order of G_{q,d} at s = -n by exact divisor bookkeeping."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    order = 0
    for m in range(d):
        for shift in (q, d - q):
            t = -n - shift + m
            if t % d == 0 and t // d <= -1:
                order += -(t // d)
    return order


def log_g_e(s, orb: OrbifoldData, prec: int = DEFAULT_PREC):
    """log of G_E(s) = prod_R prod_j G_{q(R)_j, d_R}(s)."""
    with mp.workprec(prec + 16):
        z = mp.mpmathify(s)
        val = mp.fsum(
            log_g_qd(z, q, d, prec + 16)
            for d, qs in orb.elliptic_classes()
            for q in qs
        )
    return _rounded(prec, val)


def g_e(s, orb: OrbifoldData, prec: int = DEFAULT_PREC):
    with mp.workprec(prec + 8):
        return _rounded(prec, mp.exp(log_g_e(s, orb, prec + 8)))


def order_g_e_at(n: int, orb: OrbifoldData) -> int:
    return sum(
        order_g_qd_at(n, q, d) for d, qs in orb.elliptic_classes() for q in qs
    )


def log_tilde_g1(s, orb: OrbifoldData, prec: int = DEFAULT_PREC):
    """log of the alternate gamma factor
    G_E(s)^(-1) ((2 pi)^(-s) G(s+1)^2 / Gamma(s))^(h(2g-2+c+e))."""
    sig = orb.signature
    power = orb.dim * (2 * sig.genus - 2 + sig.cusps + sig.num_elliptic)
    with mp.workprec(prec + 16):
        z = mp.mpmathify(s)
        block = (
            -z * mp.log(2 * mp.pi)
            + 2 * log_barnes_g(z + 1, prec + 16)
            - log_gamma(z, prec + 16)
        )
        val = -log_g_e(z, orb, prec + 16) + power * block
    return _rounded(prec, val)


def tilde_g1(s, orb: OrbifoldData, prec: int = DEFAULT_PREC):
    with mp.workprec(prec + 8):
        return _rounded(prec, mp.exp(log_tilde_g1(s, orb, prec + 8)))


def order_tilde_g1_at(n: int, orb: OrbifoldData) -> int:
    """Order of the alternate gamma factor at -n; equals m_n."""
    sig = orb.signature
    power = orb.dim * (2 * sig.genus - 2 + sig.cusps + sig.num_elliptic)
    return power * (2 * n + 1) - order_g_e_at(n, orb)
