"""Integer combinatorics of the trivial zeros of the Selberg zeta function.

Everything here is exact: residue systems q_j(R,m), qt_j(R,m) and their
wrap counts, the alpha/beta coefficients, closed-form character sums over
roots of unity, and the trivial-zero multiplicities m_n computed by two
independent routes (a floor-function formula in exact integer arithmetic,
and the spectral sine-sum evaluated numerically).  The floor formula is the
authoritative integer; the spectral form is the cross-checking oracle.

Note m_0 = h (2g - 2 + c) for the trivial representation, which is negative
for small signatures (e.g. -1 for the modular one); negative values are
returned as-is and read downstream as pole orders of the gamma factor.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from mpmath import mp

from .errors import DomainError, NonIntegerError
from .numerics import DEFAULT_PREC, _rounded
from .orbifold import OrbifoldData


@dataclass(frozen=True)
class ResidueQuad:
    """Residues of m +/- q modulo d together with their wrap counts.

    q_m = m + q + d * k_shift and qt_m = m - q + d * kt_shift, both in
    {0, ..., d-1}.  For 0 <= m < d the sum k_shift + kt_shift lies in
    {-1, 0, 1} and follows the three-case table (+1 iff m < q and m+q < d;
    -1 iff m >= q and m+q >= d; 0 otherwise); for m >= d it picks up an
    extra -2 * (m // d).
    """

    q_m: int
    qt_m: int
    k_shift: int
    kt_shift: int

    @property
    def k_total(self) -> int:
        return self.k_shift + self.kt_shift


def residues(m: int, q: int, d: int) -> ResidueQuad:
    """The unique residues/shifts for (m, q, d) with 0 <= q < d, m >= 0."""
    if d < 2:
        raise DomainError("d must be >= 2")
    if not 0 <= q <= d - 1:
        raise DomainError(f"q = {q} outside [0, {d - 1}]")
    if m < 0:
        raise DomainError("m must be nonnegative")
    q_m = (m + q) % d
    qt_m = (m - q) % d
    return ResidueQuad(
        q_m=q_m,
        qt_m=qt_m,
        k_shift=(q_m - m - q) // d,
        kt_shift=(qt_m - m + q) // d,
    )


def case_table_shift(m: int, q: int, d: int) -> int:
    """The three-case value of k(R,m,j); the law residues() obeys for m < d."""
    if m < q and m + q < d:
        return 1
    if m >= q and m + q >= d:
        return -1
    return 0


def alpha(d: int, exponents, m: int) -> int:
    """alpha(R, m) = sum_j (qt_j(R,m) + q_j(R,m)) >= 0."""
    return sum(
        (r := residues(m, q, d)).q_m + r.qt_m for q in exponents
    )


def beta_coeff(d: int, exponents, m: int) -> int:
    """beta(R, m) = sum_j k(R,m,j); satisfies alpha = 2mh + beta*d exactly."""
    return sum(residues(m, q, d).k_total for q in exponents)


# ---------------------------------------------------------------------------
# Trigonometric character sums
# ---------------------------------------------------------------------------

_TRIG_CACHE: dict[tuple[int, int], tuple[list, list]] = {}
_trig_lock = threading.Lock()


def _trig_tables(d: int, prec: int):
    """sin(pi j / d) for j in [0, 2d) and exp(2 pi i r / d) for r in [0, d)."""
    key = (d, prec)
    with _trig_lock:
        tab = _TRIG_CACHE.get(key)
        if tab is None:
            with mp.workprec(prec + 8):
                sins = [mp.sinpi(mp.mpf(j) / d) for j in range(2 * d)]
                roots = [mp.expjpi(2 * mp.mpf(r) / d) for r in range(d)]
            tab = (sins, roots)
            _TRIG_CACHE[key] = tab
    return tab


def trig_sum_closed(n: int, q: int, d: int) -> int:
    """d - 1 - (q(n) + qt(n)) where q(n), qt(n) are residues of n +/- q mod d."""
    if d < 2 or not 0 <= q <= d - 1 or n < 0:
        raise DomainError("need d >= 2, 0 <= q < d, n >= 0")
    return d - 1 - ((n + q) % d + (n - q) % d)


def trig_sum_brute(n: int, q: int, d: int, prec: int = DEFAULT_PREC):
    """sum_{k=1}^{d-1} omega^k sin(k pi (2n+1)/d) / sin(k pi / d), numerically.

    omega = exp(2 pi i q / d).  Returned as a complex number whose imaginary
    part must vanish to working precision.
    """
    if d < 2 or not 0 <= q <= d - 1 or n < 0:
        raise DomainError("need d >= 2, 0 <= q < d, n >= 0")
    sins, roots = _trig_tables(d, prec)
    with mp.workprec(prec + 8):
        total = mp.mpc(0)
        for k in range(1, d):
            num = sins[(k * (2 * n + 1)) % (2 * d)]
            total += roots[(q * k) % d] * num / sins[k]
    return _rounded(prec, total)


# ---------------------------------------------------------------------------
# Counting lemmas
# ---------------------------------------------------------------------------


def count_multiples(n: int, q: int, d: int) -> int:
    """|{t : t*d in {-n+q, ..., n+q}}| by direct iteration (the oracle)."""
    if d < 2 or not 0 <= q <= d - 1 or n < 0:
        raise DomainError("need d >= 2, 0 <= q < d, n >= 0")
    count = 0
    t = -(n // d) - 1
    while t * d <= n + q:
        if -n + q <= t * d:
            count += 1
        t += 1
    return count


def g_count(n: int, q: int, d: int) -> int:
    """floor((n+q)/d) + floor((n+d-q)/d); closed form of count_multiples."""
    if d < 2 or not 0 <= q <= d - 1 or n < 0:
        raise DomainError("need d >= 2, 0 <= q < d, n >= 0")
    return (n + q) // d + (n + d - q) // d


# ---------------------------------------------------------------------------
# Trivial-zero multiplicities by two independent formulas
# ---------------------------------------------------------------------------


def m_n_floor(orb: OrbifoldData, n: int) -> int:
    """m_n = h(2g-2+c+e)(2n+1) - sum_R sum_j g_count(n, q(R)_j, d_R), exactly."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    sig = orb.signature
    h = orb.dim
    total = h * (2 * sig.genus - 2 + sig.cusps + sig.num_elliptic) * (2 * n + 1)
    for d, qs in orb.elliptic_classes():
        for q in qs:
            total -= g_count(n, q, d)
    return total


def m_n_spectral(orb: OrbifoldData, n: int, prec: int = DEFAULT_PREC):
    """The sine-sum form of m_n, evaluated numerically.

    m_n = h vol/(2 pi) (2n+1)
          - sum_R sum_{k=1}^{d_R-1} tr(chi^k(R))/d_R
            * sin(k pi (2n+1)/d_R) / sin(k pi / d_R).

    Raises NonIntegerError if the result strays more than 10 * 2^(-prec/2)
    from an integer, which would signal an implementation bug.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    from .orbifold import vol_over_2pi  # local import to avoid cycle noise

    h = orb.dim
    v = vol_over_2pi(orb.signature)
    with mp.workprec(prec + 8):
        total = mp.mpc(mp.mpf(v.numerator) / v.denominator * h * (2 * n + 1))
        for d, qs in orb.elliptic_classes():
            sins, roots = _trig_tables(d, prec)
            for k in range(1, d):
                chi_tr = mp.fsum(
                    (roots[(q * k) % d] for q in qs), absolute=False
                )
                ratio = sins[(k * (2 * n + 1)) % (2 * d)] / sins[k]
                total -= chi_tr * ratio / d
        nearest = mp.nint(total.real)
        if abs(total - nearest) > 10 * mp.mpf(2) ** (-prec // 2):
            raise NonIntegerError(
                f"spectral multiplicity {total} not close to an integer at n={n}"
            )
        out = total.real
    return _rounded(prec, out)
