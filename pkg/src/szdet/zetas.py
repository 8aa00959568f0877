"""Selberg zeta function via its Euler product, and scattering determinants.

Geodesics: primitive hyperbolic conjugacy classes of the modular group are
enumerated as canonical cyclic words in the parabolic generators
L = [[1,1],[0,1]] and R = [[1,0],[1,1]] (pure powers of one letter are
parabolic and excluded).  Canonical form = lexicographically minimal
rotation; a word is primitive when it is not a proper power.  Norms are
N(P0) = ((t + sqrt(t^2-4))/2)^2 with t the integer trace.

log Z(s) = - sum over primitive classes P0 and powers l >= 1 of
tr chi(P0^l) / (l (1 - N(P0)^-l) N(P0)^{l s}), absolutely convergent for
Re(s) > 1; evaluations carry an explicit truncation tail estimate.

Scattering determinants come in two flavours: the built-in modular closed
form sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s)) and a generic
Dirichlet-series model L(s) H(s) with user-supplied coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Protocol

from mpmath import mp

from .errors import ConvergenceError, CutoffError, DomainError, PoleError
from .numerics import (
    DEFAULT_PREC,
    _is_real,
    _nonpositive_integer,
    _real,
    _rounded,
    log_gamma,
    riemann_zeta,
    to_scalar,
)

_L = (1, 1, 0, 1)
_R = (1, 0, 1, 1)


def _mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def word_matrix(word: str):
    """Integer matrix of an L/R word."""
    m = (1, 0, 0, 1)
    for ch in word:
        if ch == "L":
            m = _mat_mul(m, _L)
        elif ch == "R":
            m = _mat_mul(m, _R)
        else:
            raise DomainError(f"word may contain only L and R, got {ch!r}")
    return m


def word_trace(word: str) -> int:
    m = word_matrix(word)
    return m[0] + m[3]


def minimal_rotation(w: str) -> str:
    """Lexicographically least rotation (Booth's algorithm)."""
    s = w + w
    n = len(s)
    f = [-1] * n
    k = 0
    for j in range(1, n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return w[k - len(w):] + w[:k - len(w)] if k else w


def is_primitive_word(w: str) -> bool:
    """True when w is not a proper power of a shorter word."""
    return (w + w).find(w, 1) == len(w)


def norm_of_trace(t: int, prec: int = DEFAULT_PREC):
    """N = ((t + sqrt(t^2 - 4)) / 2)^2 for an integer trace t >= 3."""
    if t < 3:
        raise DomainError("hyperbolic classes have trace >= 3")
    with mp.workprec(prec + 8):
        lam = (t + mp.sqrt(mp.mpf(t) ** 2 - 4)) / 2
        return _rounded(prec, lam * lam)


def smallest_modular_norm(prec: int = DEFAULT_PREC):
    return norm_of_trace(3, prec)


@dataclass(frozen=True)
class GeodesicClass:
    """A primitive hyperbolic conjugacy class with its character data.

    ``chi`` is one of ('trivial', h), ('eigs', eigenvalue tuple) or
    ('table', trace tuple); chi_trace(l) evaluates tr chi(P0^l).
    """

    word: str
    trace: int
    norm: object
    chi: tuple = ("trivial", 1)

    def chi_trace(self, ell: int):
        kind, data = self.chi
        if kind == "trivial":
            return mp.mpf(data)
        if kind == "eigs":
            return mp.fsum((lam**ell for lam in data), absolute=False)
        if kind == "table":
            if ell > len(data):
                raise DomainError(
                    f"chi trace table for {self.word} holds only "
                    f"{len(data)} powers, requested {ell}"
                )
            return data[ell - 1]
        raise DomainError(f"unknown chi kind {kind!r}")


class GeodesicSource(Protocol):
    """Complete, duplicate-free, deterministically ordered enumeration."""

    dim: int

    def classes(self, norm_cutoff, prec: int) -> list[GeodesicClass]: ...


def _max_trace_for_cutoff(norm_cutoff, prec: int) -> int:
    with mp.workprec(prec + 16):
        x = to_scalar(norm_cutoff, prec + 16)
        t = int(mp.floor(mp.sqrt(x))) + 2
        while t >= 3 and norm_of_trace(t, prec + 16) > x:
            t -= 1
        return t  # < 3 when no class fits


def _modular_words_up_to_trace(tmax: int, keep_imprimitive: bool = False):
    """Canonical cyclic words with both letters and trace <= tmax.

    Words are walked as exponent blocks L^a R^b (a, b >= 1): all matrix
    entries stay nonnegative, so the trace of any completion is monotone in
    every entry and each block exponent can be cut off as soon as the
    cheapest completion overshoots.  The lexicographically minimal rotation
    starts with the longest L-run, hence at a block boundary, so every class
    is seen; Booth canonicalization plus a set removes the duplicates.
    """
    out = []
    if tmax < 3:
        return out
    seen = set()

    def emit(word: str, tr: int):
        if word in seen:
            return
        canon = minimal_rotation(word)
        if canon in seen:
            return
        seen.add(canon)
        if keep_imprimitive or is_primitive_word(canon):
            out.append((tr, canon))

    # stack holds (matrix of complete blocks, word string)
    stack = [((1, 0, 0, 1), "")]
    while stack:
        m, w = stack.pop()
        a = 1
        while True:
            ml = _mat_mul(m, (1, a, 0, 1))
            # cheapest completion appends a single R
            if ml[0] + ml[1] + ml[3] > tmax:
                break
            b = 1
            while True:
                full = _mat_mul(ml, (1, 0, b, 1))
                tr = full[0] + full[3]
                if tr > tmax:
                    break
                word = w + "L" * a + "R" * b
                emit(word, tr)
                stack.append((full, word))
                b += 1
            a += 1
    out.sort()
    return out


def _chi_eigs_for_word(word: str, images, prec: int):
    u_l, u_r = images
    with mp.workprec(prec + 8):
        a = mp.matrix(u_l)
        b = mp.matrix(u_r)
        prod = mp.eye(a.rows)
        for ch in word:
            prod = prod * (a if ch == "L" else b)
        eigs, _ = mp.eig(prod, left=False, right=False)
        return tuple(eigs)


def modular_geodesics(
    norm_cutoff,
    rep=None,
    dim: int = 1,
    prec: int = DEFAULT_PREC,
) -> list[GeodesicClass]:
    """Primitive hyperbolic classes of the modular group with norm <= cutoff.

    ``rep``, when given, is a pair of unitary dim x dim generator images
    (chi(L), chi(R)); character traces of powers then come from the
    eigenvalues of the word product.  Without it tr chi = dim.
    """
    tmax = _max_trace_for_cutoff(norm_cutoff, prec)
    if tmax < 3:
        raise CutoffError(
            f"cutoff {norm_cutoff} below the smallest norm "
            f"{smallest_modular_norm(53)}"
        )
    classes = []
    for tr, w in _modular_words_up_to_trace(tmax):
        if rep is None:
            chi = ("trivial", dim)
        else:
            chi = ("eigs", _chi_eigs_for_word(w, rep, prec))
        classes.append(
            GeodesicClass(word=w, trace=tr, norm=norm_of_trace(tr, prec), chi=chi)
        )
    return classes


@dataclass
class ModularGeodesicSource:
    """Cached enumeration of modular-group classes."""

    rep: Optional[tuple] = None
    dim: int = 1
    _cache: dict = field(default_factory=dict, repr=False)

    def classes(self, norm_cutoff, prec: int = DEFAULT_PREC):
        key = (str(to_scalar(norm_cutoff, 64)), prec)
        if key not in self._cache:
            self._cache[key] = modular_geodesics(
                norm_cutoff, rep=self.rep, dim=self.dim, prec=prec
            )
        return self._cache[key]


@dataclass
class ListGeodesicSource:
    """A fixed class list (synthetic data or a loaded cache file)."""

    entries: tuple
    dim: int = 1

    def classes(self, norm_cutoff, prec: int = DEFAULT_PREC):
        with mp.workprec(prec + 8):
            x = to_scalar(norm_cutoff, prec + 8)
            kept = [
                c for c in self.entries if norm_of_trace(c.trace, prec + 8) <= x
            ]
        return sorted(kept, key=lambda c: (c.trace, c.word))


class ValueWithTail(NamedTuple):
    value: object
    tail_bound: object


def selberg_log_z(
    source: GeodesicSource, s, cutoff, prec: int = DEFAULT_PREC
) -> ValueWithTail:
    """Truncated log Z(s) over classes with norm <= cutoff, plus tail bound.

    The tail estimate covers the classes beyond the cutoff (via the geodesic
    counting function, with a safety factor) and the truncated l-powers.
    """
    wp = prec + 16
    with mp.workprec(wp):
        z = to_scalar(s, wp)
        sigma = _real(z)
        if sigma <= 1:
            raise ConvergenceError("Euler product requires Re(s) > 1")
        total = mp.mpf(0)
        for cls in source.classes(cutoff, prec):
            n0 = norm_of_trace(cls.trace, wp)
            log_n0 = mp.log(n0)
            lmax = max(1, int(mp.ceil((wp + 10) * mp.log(2) / (sigma * log_n0))))
            npow = n0 ** (-z)
            nl = npow
            for ell in range(1, lmax + 1):
                total -= cls.chi_trace(ell) * nl / (ell * (1 - n0 ** (-ell)))
                nl *= npow
        x = to_scalar(cutoff, wp)
        tail = (
            8 * source.dim * sigma / (sigma - 1) * x ** (1 - sigma) / mp.log(x)
            + mp.mpf(2) ** (-prec) * (1 + abs(total))
        )
    return ValueWithTail(_rounded(prec, total), _rounded(prec, tail))


# ---------------------------------------------------------------------------
# Scattering determinants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModularScattering:
    """phi(s) = sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s)).

    Realizes the one-cusp Dirichlet-series structure with g_1 = 1 and
    d(1) = 1, so the degree of singularity is 1 and c1 = c2 = 0.
    """

    k: int = 1

    def constants(self):
        return (1, mp.mpf(0), mp.mpf(0))

    def phi(self, s, prec: int = DEFAULT_PREC):
        wp = prec + 16
        with mp.workprec(wp):
            z = to_scalar(s, wp)
            if _is_real(z) and (_real(z) == 1 or _real(z) == mp.mpf(1) / 2):
                raise PoleError(f"modular scattering determinant pole at s = {s}")
            if _nonpositive_integer(z - mp.mpf(1) / 2) is not None:
                raise PoleError(f"Gamma(s - 1/2) pole at s = {s}")
            val = (
                mp.sqrt(mp.pi)
                * gamma_value(z - mp.mpf(1) / 2, wp)
                / gamma_value(z, wp)
                * riemann_zeta(2 * z - 1, wp)
                / riemann_zeta(2 * z, wp)
            )
        return _rounded(prec, val)


@dataclass(frozen=True)
class GenericScattering:
    """phi(s) = L(s) H(s) from user-supplied generalized Dirichlet data.

    L(s) = (sqrt(pi) Gamma(s-1/2) / Gamma(s))^k  exp(c1 s + c2) and
    H(s) = 1 + sum_n a_n u_n^(-2s) with 1 < u_2 < u_3 < ...  The supplied
    terms are treated as exact, so the declared series end carries no
    truncation estimate; validity demands Re(s) > 1.
    """

    k: int
    c1: object = 0
    c2: object = 0
    terms: tuple = ()

    def __post_init__(self):
        us = [to_scalar(u, 64) for u, _ in self.terms]
        if any(u <= 1 for u in us):
            raise DomainError("generic scattering terms need u_n > 1")
        if any(us[i] >= us[i + 1] for i in range(len(us) - 1)):
            raise DomainError("generic scattering u_n must be strictly increasing")

    def constants(self):
        return (self.k, to_scalar(self.c1), to_scalar(self.c2))

    def phi(self, s, prec: int = DEFAULT_PREC):
        wp = prec + 16
        with mp.workprec(wp):
            z = to_scalar(s, wp)
            if _real(z) <= 1:
                raise ConvergenceError(
                    "generic scattering series requires Re(s) > 1"
                )
            if _nonpositive_integer(z - mp.mpf(1) / 2) is not None:
                raise PoleError(f"Gamma(s - 1/2) pole at s = {s}")
            ell = self.k * (
                mp.log(mp.pi) / 2 + log_gamma(z - mp.mpf(1) / 2, wp) - log_gamma(z, wp)
            ) + to_scalar(self.c1, wp) * z + to_scalar(self.c2, wp)
            acc = mp.mpf(1)
            for u, a in self.terms:
                acc += to_scalar(a, wp) * to_scalar(u, wp) ** (-2 * z)
            val = mp.exp(ell) * acc
        return _rounded(prec, val)


ScatteringModel = ModularScattering | GenericScattering


def gamma_value(z, prec: int = DEFAULT_PREC):
    """Gamma(z) as a value; handles the negative real axis by reflection."""
    with mp.workprec(prec + 8):
        w = to_scalar(z, prec + 8)
        if _nonpositive_integer(w) is not None:
            raise PoleError(f"Gamma pole at {z}")
        if _is_real(w) and _real(w) < 0:
            val = mp.pi / (mp.sinpi(w) * mp.exp(log_gamma(1 - w, prec + 8)))
        else:
            val = mp.exp(log_gamma(w, prec + 8))
    return _rounded(prec, val)


def scattering_phi(model: ScatteringModel, s, prec: int = DEFAULT_PREC):
    """phi(s) under the selected model."""
    return model.phi(s, prec)


def scattering_constants(model: ScatteringModel):
    """(k, c1, c2) as consumed by the regularized-determinant formulas."""
    return model.constants()


# ---------------------------------------------------------------------------
# Independent conjugacy-class count (test oracle)
# ---------------------------------------------------------------------------


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def _form_reduce_step(form, sq):
    a, b, c = form
    ac = abs(c)
    if ac <= sq:
        bp = sq - ((sq + b) % (2 * ac))
    else:
        r = (-b) % (2 * ac)
        bp = r if r <= ac else r - 2 * ac
    cp = (bp * bp - (b * b - 4 * a * c)) // (4 * c)
    return (c, bp, cp)


def _form_is_reduced(form, sq) -> bool:
    a, b, _ = form
    if b < 1 or b > sq:
        return False
    return sq - b + 1 <= 2 * abs(a) <= sq + b


def _form_cycle_key(form, disc):
    sq = _isqrt(disc)
    f = form
    seen = 0
    while not _form_is_reduced(f, sq):
        f = _form_reduce_step(f, sq)
        seen += 1
        if seen > 10000:
            raise RuntimeError("form reduction failed to terminate")
    cycle = [f]
    g = _form_reduce_step(f, sq)
    while g != f:
        cycle.append(g)
        g = _form_reduce_step(g, sq)
    return min(cycle)


def matrix_class_counts(tmax: int, entry_bound: int = 60) -> dict[int, int]:
    """Conjugacy classes of trace-t hyperbolic matrices, 3 <= t <= tmax.

    Brute force: enumerate integer matrices with entries bounded by
    ``entry_bound``, map each to its fixed-point binary quadratic form
    (c, d-a, -b) of discriminant t^2 - 4, and Gauss-reduce; classes
    correspond to reduction cycles.  Counts all classes, including proper
    powers (the word-side comparison must include imprimitive necklaces).
    """
    reps: dict[int, set] = {t: set() for t in range(3, tmax + 1)}
    for t in range(3, tmax + 1):
        disc = t * t - 4
        for a in range(-entry_bound, entry_bound + 1):
            d = t - a
            if abs(d) > entry_bound:
                continue
            prod = a * d - 1  # = b c
            if prod == 0:
                for b, c in ((0, 0),):
                    pass  # bc = 0 requires ad = 1, trace +-2: not hyperbolic
                continue
            for b in _divisors_signed(prod, entry_bound):
                c = prod // b
                if abs(c) > entry_bound:
                    continue
                if c == 0:
                    continue
                key = _form_cycle_key((c, d - a, -b), disc)
                reps[t].add(key)
    return {t: len(v) for t, v in reps.items()}


def _divisors_signed(n: int, bound: int):
    out = []
    m = abs(n)
    i = 1
    while i * i <= m:
        if m % i == 0:
            for b in {i, m // i}:
                if b <= bound:
                    out.append(b)
                    out.append(-b)
        i += 1
    return sorted(out)


def necklace_counts_by_trace(tmax: int) -> dict[int, int]:
    """Cyclic L/R words (including proper powers) per trace, word side."""
    counts: dict[int, int] = {}
    for tr, _ in _modular_words_up_to_trace(tmax, keep_imprimitive=True):
        counts[tr] = counts.get(tr, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def save_geodesic_table(path, classes, prec: int = DEFAULT_PREC, l_max: int = 8):
    """One record per class: word, trace, norm, chi traces (tab-separated)."""
    with mp.workprec(prec), open(path, "w") as fh:
        digits = int(prec / 3.32) + 2
        for cls in classes:
            traces = []
            for ell in range(1, l_max + 1):
                v = mp.mpc(cls.chi_trace(ell))
                traces.append(
                    f"{mp.nstr(v.real, digits)},{mp.nstr(v.imag, digits)}"
                )
            fh.write(
                "\t".join(
                    [cls.word, str(cls.trace), mp.nstr(mp.mpf(cls.norm), digits)]
                    + traces
                )
                + "\n"
            )


def load_geodesic_table(path, dim: int = 1, prec: int = DEFAULT_PREC) -> ListGeodesicSource:
    entries = []
    with mp.workprec(prec), open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            word, trace, norm = fields[0], int(fields[1]), mp.mpf(fields[2])
            table = tuple(
                mp.mpc(*[mp.mpf(p) for p in f.split(",")]) for f in fields[3:]
            )
            entries.append(
                GeodesicClass(word=word, trace=trace, norm=norm, chi=("table", table))
            )
    return ListGeodesicSource(entries=tuple(entries), dim=dim)


def save_generic_scattering(path, model: GenericScattering, prec: int = DEFAULT_PREC):
    """Header 'k c1 c2', then one 'u_n Re(a_n) Im(a_n)' line per term."""
    with mp.workprec(prec), open(path, "w") as fh:
        digits = int(prec / 3.32) + 2
        c1 = to_scalar(model.c1, prec)
        c2 = to_scalar(model.c2, prec)
        fh.write(f"{model.k} {mp.nstr(c1, digits)} {mp.nstr(c2, digits)}\n")
        for u, a in model.terms:
            av = mp.mpc(to_scalar(a, prec))
            fh.write(
                f"{mp.nstr(to_scalar(u, prec), digits)} "
                f"{mp.nstr(av.real, digits)} {mp.nstr(av.imag, digits)}\n"
            )


def load_generic_scattering(path, prec: int = DEFAULT_PREC) -> GenericScattering:
    with mp.workprec(prec), open(path) as fh:
        lines = [
            ln.strip() for ln in fh if ln.strip() and not ln.strip().startswith("#")
        ]
    if not lines:
        raise DomainError(f"empty scattering data file {path}")
    head = lines[0].split()
    k, c1, c2 = int(head[0]), mp.mpf(head[1]), mp.mpf(head[2])
    terms = []
    for ln in lines[1:]:
        u, re_a, im_a = ln.split()
        terms.append((mp.mpf(u), mp.mpc(mp.mpf(re_a), mp.mpf(im_a))))
    return GenericScattering(k=k, c1=c1, c2=c2, terms=tuple(terms))
