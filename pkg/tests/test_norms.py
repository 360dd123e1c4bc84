"""Mixed, net and sequence norms, rearrangements."""

import itertools
import math

import numpy as np
import pytest

from haarnet import (
    ExponentPair,
    FamilySpec,
    GridFunction1,
    GridFunction2,
    generate,
    haar_forward_2d,
    lemma1_rhs,
    lp_norm_1d,
    mixed_lp_norm,
    net_maximal,
    net_norm,
    net_norm_from_table,
    parse_exponent,
    rearrangement,
    seq_norm,
    seq_norm_1d,
)
from haarnet.transform import HaarSpectrum1, HaarSpectrum2

INF = math.inf


# --- oracles ---------------------------------------------------------------


def naive_size_max(values, level):
    """All rectangles by direct cell summation (no SAT)."""
    n = 2**level
    out = np.zeros((n, n))
    for s1 in range(1, n + 1):
        for s2 in range(1, n + 1):
            best = 0.0
            for i in range(n - s1 + 1):
                for j in range(n - s2 + 1):
                    block = math.fsum(values[i : i + s1, j : j + s2].ravel().tolist())
                    best = max(best, abs(block) / (s1 * s2))
            out[s1 - 1, s2 - 1] = best
    return out


def naive_suffix_max(size_max):
    n = size_max.shape[0]
    out = np.zeros_like(size_max)
    for s1 in range(n):
        for s2 in range(n):
            out[s1, s2] = size_max[s1:, s2:].max()
    return out


def naive_seq_norm_finite(sups, sigma, q):
    """Direct double loop for finite q; sups is the per-level sup matrix."""
    total = 0.0
    for k2 in range(sups.shape[1]):
        inner = 0.0
        for k1 in range(sups.shape[0]):
            inner += (2.0 ** (sigma[0] * k1 + sigma[1] * k2) * sups[k1, k2]) ** q[0]
        total += inner ** (q[1] / q[0])
    return total ** (1.0 / q[1])


# --- ExponentPair ----------------------------------------------------------


def test_exponent_validation():
    with pytest.raises(ValueError):
        ExponentPair(1.0, 2.0)
    with pytest.raises(ValueError):
        ExponentPair(2.0, INF)
    with pytest.raises(ValueError):
        ExponentPair(0.5, 2.0)
    with pytest.raises(ValueError):
        ExponentPair(2.0, 2.0, 0.0, 1.0)
    e = ExponentPair(2.0, 4.0, 1.0, INF)
    assert e.sigma == (0.0, 0.25)
    assert e.with_q(2.0, 2.0).q == (2.0, 2.0)


def test_parse_exponent_inf_token():
    assert parse_exponent("inf") == INF
    assert parse_exponent("Inf") == INF
    assert parse_exponent("2.5") == 2.5


# --- mixed norm ------------------------------------------------------------


def test_mixed_norm_constant():
    f = generate(FamilySpec("constant", {"c": -3.0}, 3))
    for p1, p2 in [(2, 2), (1.5, 3), (4, 1.1)]:
        assert mixed_lp_norm(f, ExponentPair(p1, p2)) == pytest.approx(3.0, rel=1e-12)


def test_mixed_norm_half_indicator():
    v = np.zeros((8, 8))
    v[:4, :] = 1.0
    f = GridFunction2(3, v)
    assert mixed_lp_norm(f, ExponentPair(2.0, 3.0)) == pytest.approx(
        2.0**-0.5, rel=1e-13)


def test_mixed_norm_tensor_is_product_of_1d():
    rng = np.random.default_rng(2)
    level = 4
    g = rng.uniform(0.1, 2.0, 2**level)
    h = rng.uniform(0.1, 2.0, 2**level)
    f = GridFunction2(level, np.outer(g, h))
    p1, p2 = 2.5, 1.5
    want = lp_norm_1d(GridFunction1(level, g), p1) * lp_norm_1d(
        GridFunction1(level, h), p2)
    assert mixed_lp_norm(f, ExponentPair(p1, p2)) == pytest.approx(want, rel=1e-12)


def test_mixed_norm_22_equals_parseval():
    rng = np.random.default_rng(4)
    f = GridFunction2(4, rng.standard_normal((16, 16)))
    a = haar_forward_2d(f)
    assert mixed_lp_norm(f, ExponentPair(2.0, 2.0)) == pytest.approx(
        math.sqrt(a.sum_of_squares()), rel=1e-10)


# --- net maximal -----------------------------------------------------------


def test_net_maximal_constant():
    t = net_maximal(generate(FamilySpec("constant", {}, 2)))
    assert np.max(np.abs(t.size_max - 1.0)) < 1e-13
    assert np.max(np.abs(t.fbar - 1.0)) < 1e-13
    assert t.maxabs == pytest.approx(1.0)


def test_net_maximal_atom_level2():
    f = generate(FamilySpec("haar_atom", {"k1": 0, "k2": 0}, 2))
    t = net_maximal(f)
    assert t.fbar_at(4, 4) == pytest.approx(0.0, abs=1e-14)
    assert t.fbar_at(2, 2) == pytest.approx(1.0, rel=1e-13)
    oracle = naive_size_max(f.values, 2)
    assert np.max(np.abs(t.size_max - oracle)) < 1e-13
    assert np.max(np.abs(t.fbar - naive_suffix_max(oracle))) < 1e-13


def test_net_maximal_matches_bruteforce_level3():
    rng = np.random.default_rng(10)
    for seed in range(3):
        f = GridFunction2(3, rng.standard_normal((8, 8)))
        t = net_maximal(f)
        oracle = naive_size_max(f.values, 3)
        assert np.max(np.abs(t.size_max - oracle)) <= 1e-12 * max(
            1.0, oracle.max())
        assert np.max(np.abs(t.fbar - naive_suffix_max(oracle))) <= 1e-12 * max(
            1.0, oracle.max())


def test_net_maximal_thread_count_invariant():
    f = generate(FamilySpec("random_signs", {"seed": 21}, 4))
    t1 = net_maximal(f, threads=1)
    t4 = net_maximal(f, threads=4)
    assert np.array_equal(t1.size_max, t4.size_max)
    assert np.array_equal(t1.fbar, t4.fbar)


def test_fbar_monotone_and_edges():
    f = generate(FamilySpec("random_signs", {"seed": 2}, 3))
    t = net_maximal(f)
    assert np.all(np.diff(t.fbar, axis=0) <= 1e-15)
    assert np.all(np.diff(t.fbar, axis=1) <= 1e-15)
    assert t.fbar[0, 0] >= t.fbar.max() - 1e-15
    total = abs(np.mean(f.values))
    assert t.fbar_at(8, 8) == pytest.approx(total, rel=1e-11, abs=1e-15)


# --- net norm --------------------------------------------------------------


def test_net_norm_constant_closed_form():
    f = generate(FamilySpec("constant", {}, 4))
    for p1, p2, q1, q2 in [(2, 2, 2, 2), (1.5, 3, 2, 1), (2.5, 2, 0.5, 4)]:
        e = ExponentPair(p1, p2, q1, q2)
        want = (p1 / q1) ** (1 / q1) * (p2 / q2) ** (1 / q2)
        assert net_norm(f, e) == pytest.approx(want, rel=1e-12)


def test_net_norm_zero():
    f = GridFunction2(3, np.zeros((8, 8)))
    assert net_norm(f, ExponentPair(2, 2, 2, 2)) == 0.0
    assert net_norm(f, ExponentPair(2, 2, INF, INF)) == 0.0


def test_net_norm_constant_sup_case():
    f = generate(FamilySpec("constant", {}, 3))
    for p1, p2 in [(2, 2), (1.5, 4)]:
        e = ExponentPair(p1, p2, INF, INF)
        assert net_norm(f, e) == pytest.approx(1.0, rel=1e-13)


def test_net_norm_mixed_inf_cases_against_patch_oracle():
    # Oracle: evaluate the patchwise closed form directly from fbar with
    # plain loops, for every inf/finite combination.
    f = generate(FamilySpec("random_signs", {"seed": 5}, 3))
    t = net_maximal(f)
    n, h = 8, 2.0**-3
    fbar = t.fbar
    for q1, q2 in [(2.0, 2.0), (INF, 2.0), (2.0, INF), (INF, INF), (1.0, 3.0)]:
        e = ExponentPair(2.5, 1.75, q1, q2)
        got = net_norm_from_table(t, e)

        def inner_val(s2):
            if q1 == INF:
                return max(((s1 + 1) * h) ** (1 / e.p1) * fbar[s1, s2]
                           for s1 in range(n))
            acc = 0.0
            for s1 in range(n):
                w = (((s1 + 1) * h) ** (q1 / e.p1) - (s1 * h) ** (q1 / e.p1)) / (
                    q1 / e.p1)
                acc += fbar[s1, s2] ** q1 * w
            return acc ** (1 / q1)

        if q2 == INF:
            want = max(((s2 + 1) * h) ** (1 / e.p2) * inner_val(s2)
                       for s2 in range(n))
        else:
            acc = 0.0
            for s2 in range(n):
                w = (((s2 + 1) * h) ** (q2 / e.p2) - (s2 * h) ** (q2 / e.p2)) / (
                    q2 / e.p2)
                acc += inner_val(s2) ** q2 * w
            want = acc ** (1 / q2)
        assert got == pytest.approx(want, rel=1e-11)


# --- sequence norms --------------------------------------------------------


def test_seq_norm_atom_is_one():
    a = haar_forward_2d(generate(FamilySpec("haar_atom", {"k1": 0, "k2": 0}, 3)))
    for p1, p2 in [(2, 2), (1.5, 3), (4, 2)]:
        for q1, q2 in [(2, 2), (1, 1), (INF, INF), (0.5, 3)]:
            assert seq_norm(a, ExponentPair(p1, p2, q1, q2)) == pytest.approx(
                1.0, rel=1e-12)


def test_seq_norm_full_vs_single_level():
    level = 5
    full = haar_forward_2d(generate(FamilySpec("full_level", {"k1": 3, "k2": 3}, level)))
    single = haar_forward_2d(
        generate(FamilySpec("single_coeff_level", {"k1": 3, "k2": 3}, level)))
    for p1, p2 in [(2, 2), (1.5, 3)]:
        e = ExponentPair(p1, p2, p1, p2)
        sigma = e.sigma
        want = 2.0 ** (3 * sigma[0] + 3 * sigma[1])
        assert seq_norm(full, e) == pytest.approx(want, rel=1e-12)
        assert seq_norm(single, e) == pytest.approx(want, rel=1e-12)


def test_seq_norm_q11_matches_double_loop():
    from haarnet import random_spectrum, sup_per_level

    a = random_spectrum(4, 123)
    sups = sup_per_level(a)
    e = ExponentPair(1.7, 2.4, 1.0, 1.0)
    want = naive_seq_norm_finite(sups, e.sigma, (1.0, 1.0))
    assert seq_norm(a, e) == pytest.approx(want, rel=1e-12)


def test_seq_norm_general_q_matches_double_loop():
    from haarnet import random_spectrum, sup_per_level

    a = random_spectrum(4, 321)
    sups = sup_per_level(a)
    for q in [(2.0, 3.0), (0.7, 1.3)]:
        e = ExponentPair(2.2, 1.4, *q)
        want = naive_seq_norm_finite(sups, e.sigma, q)
        assert seq_norm(a, e) == pytest.approx(want, rel=1e-12)
    e = ExponentPair(2.2, 1.4, INF, INF)
    w = np.array([[2.0 ** (e.sigma[0] * k1 + e.sigma[1] * k2) * sups[k1, k2]
                   for k2 in range(4)] for k1 in range(4)])
    assert seq_norm(a, e) == pytest.approx(w.max(), rel=1e-12)


def test_seq_norm_truncation():
    from haarnet import random_spectrum, sup_per_level

    a = random_spectrum(4, 77)
    e = ExponentPair(2.0, 2.0, 1.0, 1.0)
    sups = sup_per_level(a)[:2, :3]
    want = naive_seq_norm_finite(sups, e.sigma, (1.0, 1.0))
    assert seq_norm(a, e, max_levels=(1, 2)) == pytest.approx(want, rel=1e-12)


def test_seq_norm_sign_and_shift_invariance():
    from haarnet import random_spectrum

    a = random_spectrum(3, 9)
    e = ExponentPair(1.5, 3.0, 2.0, INF)
    base = seq_norm(a, e)
    c = np.array(a.coeffs)
    c[1:, 1:] *= np.where(np.random.default_rng(0).random(c[1:, 1:].shape) < 0.5, -1, 1)
    for k in range(3):
        sl = slice(2**k, 2 ** (k + 1))
        c[sl, :] = c[sl, :][::-1, :]  # permute j1 within level k
    assert seq_norm(HaarSpectrum2(3, c), e) == pytest.approx(base, rel=1e-12)


def test_seq_norm_1d_examples():
    c = np.zeros(8)
    c[1] = 1.0  # level 0, shift 1
    a = HaarSpectrum1(3, c)
    for p in (1.5, 2.0, 4.0):
        assert seq_norm_1d(a, p) == pytest.approx(1.0, rel=1e-13)
    assert seq_norm_1d(HaarSpectrum1(3, np.zeros(8)), 2.0) == 0.0


def test_seq_norm_1d_flat_levels_oracle():
    # a_k^j = 2^(-k/2) for every j: direct sum oracle.
    level = 5
    c = np.zeros(2**level)
    for k in range(level):
        c[2**k : 2 ** (k + 1)] = 2.0 ** (-k / 2.0)
    a = HaarSpectrum1(level, c)
    for p in (2.0, 3.0):
        want = math.fsum(
            (2.0 ** (k * (0.5 - 1.0 / p)) * 2.0 ** (-k / 2.0)) ** p
            for k in range(level)) ** (1.0 / p)
        assert seq_norm_1d(a, p) == pytest.approx(want, rel=1e-12)
    with pytest.raises(ValueError):
        seq_norm_1d(a, 1.0)


# --- rearrangement and the dyadic sum --------------------------------------


def test_rearrangement_constant():
    star, starstar = rearrangement(GridFunction1(3, np.full(8, -2.0)))
    assert np.all(star.values == 2.0)
    assert np.all(starstar == 2.0)


def test_rearrangement_alternating():
    star, starstar = rearrangement(GridFunction1(2, np.array([0.0, 1.0, 0.0, 1.0])))
    assert np.array_equal(star.values, [1.0, 1.0, 0.0, 0.0])
    assert starstar[1] == pytest.approx(1.0)  # phi**(1/2)


def test_rearrangement_matches_subset_oracle():
    rng = np.random.default_rng(6)
    phi = GridFunction1(3, rng.standard_normal(8))
    _, starstar = rearrangement(phi)
    vals = np.abs(phi.values)
    for m in range(1, 9):
        best = max(
            sum(vals[list(idx)]) / m for idx in itertools.combinations(range(8), m))
        assert starstar[m - 1] == pytest.approx(best, rel=1e-12)


def test_rearrangement_properties():
    rng = np.random.default_rng(13)
    phi = GridFunction1(4, rng.standard_normal(16))
    star, starstar = rearrangement(phi)
    assert sorted(np.abs(phi.values).tolist()) == sorted(star.values.tolist())
    assert np.all(np.diff(star.values) <= 1e-15)
    assert np.all(starstar + 1e-15 >= star.values)


def test_lemma1_rhs_constant():
    phi = GridFunction1(4, np.ones(16))
    for p in (1.5, 2.0, 4.0):
        want = math.fsum(2.0**-k for k in range(5)) ** (1.0 / p)
        assert lemma1_rhs(phi, p) == pytest.approx(want, rel=1e-13)


def test_lemma1_rhs_zero_and_indicator():
    assert lemma1_rhs(GridFunction1(3, np.zeros(8)), 2.0) == 0.0
    v = np.zeros(8)
    v[:4] = 1.0
    phi = GridFunction1(3, v)
    # phi** at t = 2^-k: 1 for k >= 1; at t = 1 it is 1/2.
    for p in (1.5, 3.0):
        want = ((0.5) ** p + math.fsum(
            (2.0 ** (-k / p)) ** p for k in range(1, 4))) ** (1 / p)
        assert lemma1_rhs(phi, p) == pytest.approx(want, rel=1e-12)


# --- cross-cutting properties ----------------------------------------------


def test_norm_homogeneity():
    rng = np.random.default_rng(15)
    level = 3
    f = GridFunction2(level, rng.standard_normal((8, 8)))
    lam = -3.7
    g = GridFunction2(level, lam * f.values)
    a_f, a_g = haar_forward_2d(f), haar_forward_2d(g)
    for e in [ExponentPair(2, 2, 2, 2), ExponentPair(1.5, 3, 1, INF)]:
        assert mixed_lp_norm(g, e) == pytest.approx(abs(lam) * mixed_lp_norm(f, e),
                                                    rel=1e-12)
        assert net_norm(g, e) == pytest.approx(abs(lam) * net_norm(f, e), rel=1e-12)
        assert seq_norm(a_g, e) == pytest.approx(abs(lam) * seq_norm(a_f, e),
                                                 rel=1e-12)


def test_all_norms_constant_one():
    f = generate(FamilySpec("constant", {}, 3))
    e = ExponentPair(2.0, 2.0, 2.0, 2.0)
    assert mixed_lp_norm(f, e) == pytest.approx(1.0, rel=1e-13)
    assert net_norm(f, e) == pytest.approx(1.0, rel=1e-12)


def test_monotone_function_mixed_below_net():
    # Pointwise, a monotone non-increasing function sits below its running
    # corner average, hence below the maximal function; with q = p the net
    # norm is the mixed norm of the maximal function.
    for spec in [
        FamilySpec("tensor_power", {"alpha": 0.25, "beta": 0.25}, 5),
        FamilySpec("sum_power", {"gamma": 0.25}, 5),
        FamilySpec("random_monotone", {"seed": 4}, 5),
    ]:
        f = generate(spec)
        for p1, p2 in [(2.0, 2.0), (1.5, 3.0)]:
            e = ExponentPair(p1, p2, p1, p2)
            assert mixed_lp_norm(f, e) <= net_norm(f, e) * (1 + 1e-12)
