import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from szdet.errors import ConvergenceError, CutoffError, PoleError
from szdet.numerics import riemann_zeta
from szdet.zetas import (
    GenericScattering,
    GeodesicClass,
    ListGeodesicSource,
    ModularGeodesicSource,
    ModularScattering,
    is_primitive_word,
    load_generic_scattering,
    load_geodesic_table,
    matrix_class_counts,
    minimal_rotation,
    modular_geodesics,
    necklace_counts_by_trace,
    norm_of_trace,
    save_generic_scattering,
    save_geodesic_table,
    scattering_constants,
    scattering_phi,
    selberg_log_z,
    word_matrix,
    word_trace,
)

P = 256


@given(st.text(alphabet="LR", min_size=1, max_size=14))
def test_minimal_rotation_matches_naive(w):
    naive = min(w[i:] + w[:i] for i in range(len(w)))
    assert minimal_rotation(w) == naive


def test_word_matrix_examples():
    assert word_matrix("LLRR") == (5, 2, 2, 1)
    assert word_trace("LLRR") == 6
    assert word_trace("LR") == 3
    assert word_trace("LLR") == 4 == word_trace("LRR")


def test_primitivity():
    assert is_primitive_word("LR")
    assert is_primitive_word("LLR")
    assert not is_primitive_word("LRLR")
    assert not is_primitive_word("LLRLLR")


def test_smallest_class():
    cl = modular_geodesics(7, prec=128)
    assert len(cl) == 1
    assert cl[0].word == "LR" and cl[0].trace == 3
    with mp.workprec(160):
        expect = (7 + 3 * mp.sqrt(5)) / 2
        assert abs(cl[0].norm - expect) < mpf(2) ** -120
    with pytest.raises(CutoffError):
        modular_geodesics(6, prec=128)


def test_trace_four_classes():
    words = [c.word for c in modular_geodesics(20, prec=128) if c.trace == 4]
    assert words == ["LLR", "LRR"]


def test_enumeration_determinism():
    a = [(c.word, c.trace) for c in modular_geodesics(500, prec=128)]
    b = [(c.word, c.trace) for c in modular_geodesics(500, prec=128)]
    assert a == b
    assert a == sorted(a, key=lambda t: (t[1], t[0]))


def test_enumeration_matches_matrix_oracle():
    word_counts = necklace_counts_by_trace(12)
    mat_counts = matrix_class_counts(12, 60)
    for t in range(3, 13):
        assert word_counts.get(t, 0) == mat_counts.get(t, 0)


def test_primitive_vs_all_classes():
    # trace 7 contains exactly the squares of the trace-3 classes
    prim = {c.word for c in modular_geodesics(norm_of_trace(12, 64), prec=64)}
    all_counts = necklace_counts_by_trace(12)
    prim_counts = {}
    for w in prim:
        prim_counts[word_trace(w)] = prim_counts.get(word_trace(w), 0) + 1
    assert all_counts[7] - prim_counts[7] == prim_counts[3]
    for t in (3, 4, 5, 6, 8):
        assert all_counts[t] == prim_counts[t]


def test_selberg_log_z_decay_and_tail():
    src = ModularGeodesicSource()
    v10 = selberg_log_z(src, mpf(10), 3000, P)
    assert abs(v10.value) < mpf(10) ** -7
    v3a = selberg_log_z(src, mpf(3), 1500, P)
    v3b = selberg_log_z(src, mpf(3), 3000, P)
    assert abs(v3b.value - v3a.value) < v3a.tail_bound
    with pytest.raises(ConvergenceError):
        selberg_log_z(src, mpf("0.9"), 100, P)


def test_selberg_empty_source():
    src = ListGeodesicSource(entries=())
    v = selberg_log_z(src, mpf(3), 100, P)
    assert v.value == 0


def test_selberg_chi_table_source():
    # a table-backed source must reproduce the eigenvalue-backed values
    src = ModularGeodesicSource()
    classes = src.classes(100, P)
    tabled = ListGeodesicSource(
        entries=tuple(
            GeodesicClass(c.word, c.trace, c.norm,
                          ("table", tuple(c.chi_trace(l) for l in range(1, 64))))
            for c in classes
        )
    )
    a = selberg_log_z(src, mpf(4), 100, 128)
    b = selberg_log_z(tabled, mpf(4), 100, 128)
    assert abs(a.value - b.value) < mpf(2) ** -100


def test_modular_phi_value():
    with mp.workprec(P + 16):
        target = 45 * riemann_zeta(3, P) / mp.pi**3
        assert abs(scattering_phi(ModularScattering(), 2, P) - target) < mpf(10) ** -25


def test_modular_phi_functional_equation():
    model = ModularScattering()
    rng = random.Random(17)
    with mp.workprec(P + 16):
        for _ in range(20):
            s = mpc(0.1 + 1.8 * rng.random(), -4 + 8 * rng.random())
            resid = abs(model.phi(s, P) * model.phi(1 - s, P) - 1)
            assert resid < mpf(10) ** -25


def test_modular_phi_poles():
    with pytest.raises(PoleError):
        scattering_phi(ModularScattering(), 1, P)
    with pytest.raises(PoleError):
        scattering_phi(ModularScattering(), mpf(1) / 2, P)


def test_scattering_constants():
    assert scattering_constants(ModularScattering()) == (1, 0, 0)
    with mp.workprec(96):
        g = GenericScattering(k=2, c1=-2 * mp.log(3), c2=0,
                              terms=((2, mpc(1, 1)),))
        k, c1, c2 = scattering_constants(g)
        assert k == 2 and abs(c1 + 2 * mp.log(3)) < mpf(2) ** -60 and c2 == 0
        # c2 = log d(1): d(1) = e gives c2 = 1
        ge = GenericScattering(k=1, c1=0, c2=1)
        assert scattering_constants(ge)[2] == 1


def test_generic_phi_pure_l():
    # with no terms beyond the leading 1, log phi - k Gamma-terms = c1 s + c2
    from szdet.numerics import log_gamma

    with mp.workprec(P + 16):
        c1, c2 = mpf("0.37"), mpf("-1.21")
        g = GenericScattering(k=2, c1=c1, c2=c2)
        s = mpc("2.3", "0.9")
        val = scattering_phi(g, s, P)
        gamma_part = 2 * (mp.log(mp.pi) / 2 + log_gamma(s - mpf(1) / 2, P)
                          - log_gamma(s, P))
        assert abs(mp.log(val) - gamma_part - (c1 * s + c2)) < mpf(2) ** (24 - P)


def test_generic_phi_matches_hand_assembly():
    from szdet.numerics import log_gamma

    rng = random.Random(23)
    with mp.workprec(P + 16):
        terms = ((mpf("1.5"), mpc("0.3", "-0.1")), (mpf(2), mpc("-0.7", "0.2")))
        g = GenericScattering(k=1, c1=mpf("0.11"), c2=mpf("0.05"), terms=terms)
        for _ in range(20):
            s = mpc(1.2 + 3 * rng.random(), -2 + 4 * rng.random())
            by_hand = (
                mp.exp(mp.log(mp.pi) / 2 + log_gamma(s - mpf(1) / 2, P)
                       - log_gamma(s, P) + mpf("0.11") * s + mpf("0.05"))
                * (1 + terms[0][1] * terms[0][0] ** (-2 * s)
                   + terms[1][1] * terms[1][0] ** (-2 * s))
            )
            assert abs(scattering_phi(g, s, P) - by_hand) < mpf(2) ** (24 - P) * abs(by_hand)
    with pytest.raises(ConvergenceError):
        scattering_phi(GenericScattering(k=0), mpf("0.8"), P)


def test_geodesic_table_roundtrip(tmp_path):
    src = ModularGeodesicSource()
    classes = src.classes(60, 128)
    path = tmp_path / "geodesics.tsv"
    save_geodesic_table(path, classes, prec=128, l_max=48)
    loaded = load_geodesic_table(path, dim=1, prec=128)
    assert [c.word for c in loaded.classes(60, 128)] == [c.word for c in classes]
    a = selberg_log_z(src, mpf(5), 60, 96)
    b = selberg_log_z(loaded, mpf(5), 60, 96)
    assert abs(a.value - b.value) < mpf(2) ** -80


def test_generic_scattering_roundtrip(tmp_path):
    with mp.workprec(160):
        g = GenericScattering(k=2, c1=mpf("0.25"), c2=mpf("-0.5"),
                              terms=((mpf("1.25"), mpc("0.5", "0.25")),))
        path = tmp_path / "scattering.dat"
        save_generic_scattering(path, g, prec=160)
        h = load_generic_scattering(path, prec=160)
        assert h.k == 2
        s = mpc("2.2", "1.4")
        assert abs(scattering_phi(g, s, 128) - scattering_phi(h, s, 128)) < mpf(2) ** -100
