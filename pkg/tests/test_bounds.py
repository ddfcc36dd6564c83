from fractions import Fraction

import numpy as np
import pytest

from latwalk import bounds
from latwalk.bounds import Verdict, _verdict


def test_lemma21_exact_case():
    chk = bounds.excursion_sum_tail_check(Fraction(1, 2), 10, 4)
    assert chk.verdict == Verdict.PASS
    assert chk.bound == pytest.approx(np.exp(-5.0), abs=1e-15)
    # frozen exact tail from the rational convolution
    tail = bounds.excursion_sum_tail_exact(Fraction(1, 2), 10, 40)
    assert tail == Fraction(1580228693, 562949953421312)
    assert chk.estimate == pytest.approx(float(tail), abs=1e-18)


def test_excursion_sum_tail_float_agrees():
    exact = float(bounds.excursion_sum_tail_exact(Fraction(1, 2), 6, 18))
    approx = bounds.excursion_sum_tail_exact(0.5, 6, 18)
    assert approx == pytest.approx(exact, abs=1e-12)


def test_lemma22_monte_carlo():
    chk = bounds.delayed_return_tail_check(a=4, k=100, trials=200_000)
    assert chk.verdict == Verdict.PASS
    assert 0.0 < chk.estimate < 1.0
    assert chk.estimate <= chk.bound


def test_lemma23_fitted_constant():
    chk = bounds.return_chain_tail_check_2d(trials=4_000)
    assert chk.verdict == Verdict.PASS
    assert 0.0 < chk.fitted_constant < 100.0


def test_fact6_fitted_constant():
    chk = bounds.return_chain_tail_check_1d(trials=4_000)
    assert chk.verdict == Verdict.PASS
    assert 0.0 < chk.fitted_constant < 100.0


def test_fact7_upper_tail():
    chk = bounds.origin_tail_upper_check(walkers=30_000)
    assert chk.verdict == Verdict.PASS


def test_fact8_lower_tail():
    chk = bounds.origin_tail_lower_check(walkers=30_000)
    assert chk.verdict == Verdict.PASS
    assert chk.margin > 0


def test_fact9_gaussian_rate():
    chk = bounds.gaussian_tail_check_1d(n=20_000, walkers=20_000)
    assert chk.verdict == Verdict.PASS


def test_fact10_exponential_constant():
    chk = bounds.exponential_tail_check_2d(walkers=30_000)
    assert chk.verdict == Verdict.PASS
    assert chk.fitted_constant > 0


def test_verdict_logic():
    assert _verdict(0.1, 0.2, 0.3, "<=") == Verdict.PASS
    assert _verdict(0.4, 0.5, 0.3, "<=") == Verdict.FAIL
    assert _verdict(0.2, 0.4, 0.3, "<=") == Verdict.INCONCLUSIVE
    assert _verdict(0.4, 0.5, 0.3, ">=") == Verdict.PASS
    assert _verdict(0.1, 0.2, 0.3, ">=") == Verdict.FAIL
    assert _verdict(0.2, 0.4, 0.3, ">=") == Verdict.INCONCLUSIVE


def test_inconclusive_with_tiny_sample():
    # 40 trials cannot separate the estimate from this bound
    chk = bounds.origin_tail_lower_check(alpha=0.05, delta=0.0, n=10 ** 3,
                             walkers=40, seed=5)
    assert chk.verdict in (Verdict.INCONCLUSIVE, Verdict.PASS)
    wide = bounds._wilson(20, 40)
    assert wide[1] - wide[0] > 0.3
