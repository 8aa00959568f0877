"""Named invariant suites, runnable from the CLI (szdet verify <suite>).

Each suite returns a list of CheckResult; a suite passes when every check
does.  These are quick self-checks at reduced scale; the full-scale
acceptance runs live in the pytest suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from . import elliptic, gfuncs, numerics, orbifold, regdet, zetas
from .errors import ProviderDomainError


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, ok=bool(ok), detail=detail)


def random_orbifold(rng: random.Random, max_h: int = 3) -> orbifold.OrbifoldData:
    """A random valid orbifold/representation configuration."""
    while True:
        g = rng.randint(0, 5)
        c = rng.randint(1, 4)
        orders = tuple(rng.randint(2, 12) for _ in range(rng.randint(0, 4)))
        try:
            sig = orbifold.Signature(g, c, orders)
            orbifold.vol_over_2pi(sig)
            break
        except Exception:
            continue
    h = rng.randint(1, max_h)
    exps = tuple(
        tuple(rng.randrange(d) for _ in range(h)) for d in orders
    )
    cusp = []
    for _ in range(c):
        k_j = rng.randint(0, h)
        angles = tuple(
            Fraction(rng.randint(1, 9), 10) for _ in range(h - k_j)
        )
        cusp.append(orbifold.CuspData(k_j, angles))
    rep = orbifold.RepresentationData(h, exps, tuple(cusp))
    return orbifold.OrbifoldData(sig, rep)


# ---------------------------------------------------------------------------


def suite_elliptic(prec: int = 192) -> list[CheckResult]:
    out = []
    rng = random.Random(20240901)
    worst = mpf(0)
    ok = True
    for _ in range(40):
        orb = random_orbifold(rng)
        for n in sorted(rng.sample(range(101), 6)):
            fl = elliptic.m_n_floor(orb, n)
            sp = elliptic.m_n_spectral(orb, n, prec)
            worst = max(worst, abs(sp - fl))
            ok = ok and abs(sp - fl) <= 10 * mpf(2) ** (-prec // 2)
    out.append(_check("dual multiplicity formulas (40 random orbifolds)", ok,
                      f"worst |spectral - floor| = {mp.nstr(worst, 3)}"))

    ok = True
    for d in range(2, 13):
        for q in range(d):
            for n in range(0, 60):
                b = elliptic.trig_sum_brute(n, q, d, prec)
                if abs(b - elliptic.trig_sum_closed(n, q, d)) > mpf(2) ** (-prec // 2):
                    ok = False
    out.append(_check("root-of-unity sine sum closed form (d <= 12)", ok))

    ok = all(
        elliptic.count_multiples(n, q, d) == elliptic.g_count(n, q, d)
        for d in range(2, 11)
        for q in range(d)
        for n in range(0, 120)
    )
    out.append(_check("floor-count lemma (d <= 10, n <= 120)", ok))

    ok = True
    for _ in range(200):
        d = rng.randint(2, 12)
        h = rng.randint(1, 3)
        qs = tuple(rng.randrange(d) for _ in range(h))
        m = rng.randint(0, 40)
        if elliptic.alpha(d, qs, m) != 2 * m * h + elliptic.beta_coeff(d, qs, m) * d:
            ok = False
    out.append(_check("alpha = 2mh + beta d identity", ok))

    ok = all(
        elliptic.residues(m, q, d).k_total == elliptic.case_table_shift(m, q, d)
        for d in range(2, 13)
        for q in range(d)
        for m in range(d)
    )
    out.append(_check("shift case table (m < d, d <= 12)", ok))
    return out


def suite_special(prec: int = 192) -> list[CheckResult]:
    out = []
    ok = all(
        numerics.BERNOULLI.recursion_residual(m) == 0 for m in range(1, 41)
    )
    b_ok = (
        numerics.BERNOULLI.value(2) == Fraction(1, 6)
        and numerics.BERNOULLI.value(4) == Fraction(-1, 30)
    )
    out.append(_check("Bernoulli convolution recursion (m <= 40)", ok and b_ok))

    rng = random.Random(7)
    tol = mpf(2) ** (20 - prec)
    with mp.workprec(prec + 8):
        pts = [
            mpc(mpf("0.1") + mpf("49.9") * rng.random(),
                mpf(-50) + 100 * rng.random())
            for _ in range(25)
        ]
        ok_g = ok_b = ok_d = True
        for z in pts:
            r = abs(numerics.log_gamma(z + 1, prec) - mp.log(z)
                    - numerics.log_gamma(z, prec))
            ok_g = ok_g and r < tol
            r = abs(numerics.log_barnes_g(z + 1, prec)
                    - numerics.log_gamma(z, prec)
                    - numerics.log_barnes_g(z, prec))
            ok_b = ok_b and r < tol
            lhs = numerics.log_gamma(z, prec) + numerics.log_gamma(z + mpf(1) / 2, prec)
            rhs = ((1 - 2 * z) * mp.log(2) + mp.log(mp.pi) / 2
                   + numerics.log_gamma(2 * z, prec))
            ok_d = ok_d and abs(mp.exp(lhs - rhs) - 1) < tol
    out.append(_check("Gamma recursion on grid", ok_g))
    out.append(_check("Barnes recursion on grid", ok_b))
    out.append(_check("duplication formula on grid", ok_d))

    with mp.workprec(prec + 8):
        z = mpc("1.7", "0.4")
        s = mpc(3, 1)
        tele = numerics.hurwitz_zeta(s, z, prec) - numerics.hurwitz_zeta(s, z + 15, prec)
        direct = mp.fsum((z + k) ** (-s) for k in range(15))
        ok = abs(tele - direct) < tol
    out.append(_check("Hurwitz telescoping (N = 15)", ok))

    with mp.workprec(2 * prec):
        pairs = [
            (numerics.log_gamma(mpc("3.3", "1.1"), prec),
             numerics.log_gamma(mpc("3.3", "1.1"), 2 * prec)),
            (numerics.riemann_zeta(mpc("0.4", "3"), prec),
             numerics.riemann_zeta(mpc("0.4", "3"), 2 * prec)),
            (numerics.log_barnes_g(mpf("7.5"), prec),
             numerics.log_barnes_g(mpf("7.5"), 2 * prec)),
        ]
        ok = all(abs(a - b) <= mpf(2) ** (16 - prec) * (1 + abs(b)) for a, b in pairs)
    out.append(_check("precision doubling stability", ok))
    return out


def suite_scattering(prec: int = 192) -> list[CheckResult]:
    out = []
    model = zetas.ModularScattering()
    rng = random.Random(11)
    with mp.workprec(prec + 8):
        worst = mpf(0)
        for _ in range(20):
            s = mpc(mpf("0.2") + 2 * rng.random(), mpf(-3) + 6 * rng.random())
            r = abs(model.phi(s, prec) * model.phi(1 - s, prec) - 1)
            worst = max(worst, r)
        ok = worst < mpf(10) ** (-25)
    out.append(_check("modular phi(s) phi(1-s) = 1", ok,
                      f"worst residual {mp.nstr(worst, 3)}"))

    with mp.workprec(prec + 8):
        target = 45 * numerics.riemann_zeta(3, prec) / mp.pi ** 3
        ok = abs(model.phi(2, prec) - target) < mpf(10) ** (-25)
    out.append(_check("phi(2) = 45 zeta(3) / pi^3", ok))

    word = zetas.necklace_counts_by_trace(8)
    mat = zetas.matrix_class_counts(8, 40)
    ok = all(word.get(t, 0) == mat.get(t, 0) for t in range(3, 9))
    out.append(_check("word vs matrix class counts (t <= 8)", ok))

    src = zetas.ModularGeodesicSource()
    with mp.workprec(prec + 8):
        vals = [abs(zetas.selberg_log_z(src, mpf(s), 2000, prec).value)
                for s in (4, 6, 8)]
        alpha = mp.sqrt(zetas.smallest_modular_norm(prec))
        ratios = [vals[i] / vals[i + 1] for i in range(2)]
        # O(alpha^-Re s) is an upper bound (the observed rate is the sharper
        # N0^-Re s): the decay must be geometric (consistent step ratios)
        # and at least as fast as alpha per unit of Re s.
        ok = (ratios[0] / 2 < ratios[1] < ratios[0] * 2
              and all(r > alpha ** 2 for r in ratios))
    out.append(_check("log Z geometric decay at Re s in {4,6,8}", ok,
                      f"step ratios {[mp.nstr(r, 4) for r in ratios]}, "
                      f"bound rate {mp.nstr(alpha ** 2, 4)}"))
    return out


def suite_regdet(prec: int = 192) -> list[CheckResult]:
    out = []
    orb = orbifold.modular_orbifold()
    ctx = regdet.SurfaceContext(
        orb, zetas.ModularGeodesicSource(), zetas.ModularScattering(),
        prec=prec, cutoff_norm=500,
    )
    with mp.workprec(prec + 8):
        tol = mpf(2) ** (-prec // 2)
        pts = [mpf(3), mpc(4, 1), mpc("2.5", "-0.7")]
        ok = all(
            abs(regdet.det_squared(ctx, z) - regdet.d_plus(ctx, z) * regdet.d_minus(ctx, z))
            / abs(regdet.det_squared(ctx, z)) < tol
            for z in pts
        )
    out.append(_check("det^2 = D+ D- (two evaluation paths)", ok))

    with mp.workprec(prec + 8):
        ok = all(
            abs(regdet.phi_from_superzeta(ctx, z)
                - zetas.scattering_phi(ctx.scattering, z, prec))
            / abs(regdet.phi_from_superzeta(ctx, z)) < tol
            for z in pts
        )
    out.append(_check("scattering determinant recovery", ok))

    pp = regdet.superzeta_zero_poly(ctx, +1)
    pm = regdet.superzeta_zero_poly(ctx, -1)
    ok = (pp[0] == pm[0] and pp[1] == pm[1]
          and pp[2] - pm[2] == Fraction(ctx.k, 2)
          and pp[0] == -ctx.orb.dim * orbifold.vol_over_2pi(ctx.orb.signature))
    out.append(_check("superzeta polynomials at s = 0 (exact)", ok))

    with mp.workprec(prec + 16):
        coeffs = gfuncs.ExpansionCoefficients(
            a2t=Fraction(0), b2=Fraction(0), a1t=Fraction(-1), b1=mpf(0),
            a0t=Fraction(1, 2), b0=-mp.log(2 * mp.pi) / 2,
            prec=prec,
        )
    inp = regdet.SuperzetaInput(
        zeros=tuple(-k for k in range(200)), coeffs=coeffs,
        evaluator=lambda w, p: mp.exp(-numerics.log_gamma(w, p)),
    )
    with mp.workprec(prec + 8):
        ok = True
        for zv in (mpf("0.8"), mpf(2), mpf("4.5")):
            v = regdet.voros_product(inp, zv, prec)
            lerch = mp.sqrt(2 * mp.pi) * mp.exp(-numerics.log_gamma(zv, prec))
            ok = ok and abs(v - lerch) < mpf(10) ** (-int(prec * 0.2))
    out.append(_check("Voros product vs Lerch closed form", ok))

    try:
        regdet.functional_symmetry_residual(ctx, mpf(3), regdet.EulerProductProvider(ctx))
        ok = False
    except ProviderDomainError:
        ok = True
    out.append(_check("symmetry checker refuses Euler-product-only provider", ok))
    return out


SUITES = {
    "elliptic": suite_elliptic,
    "special": suite_special,
    "scattering": suite_scattering,
    "regdet": suite_regdet,
}


def run_suite(name: str, prec: int = 192) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in ("elliptic", "special", "scattering", "regdet"):
            results.extend(SUITES[key](prec))
        return results
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](prec)
