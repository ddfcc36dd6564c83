import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latwalk import excursions, stats


def test_pmf_at_half():
    pmf = excursions.excursion_pmf(0.5, 4)
    assert pmf[0] == 0.5
    assert pmf[1] == 0.25
    assert pmf[2] == 0.125
    assert pmf[3] == 0.0625


def test_pmf_degenerate_endpoint():
    pmf = excursions.excursion_pmf(1.0, 3)
    assert pmf[0] == 0.0
    assert pmf[1] == 1.0
    assert np.all(pmf[2:] == 0.0)


@given(st.floats(min_value=0.01, max_value=1.0))
@settings(max_examples=60, deadline=None)
def test_pmf_mass_adds_to_one(p):
    k = 2000
    pmf = excursions.excursion_pmf(p, k)
    tail = excursions.excursion_tail(p, k + 1)
    assert pmf.sum() + tail == pytest.approx(1.0, abs=1e-9)


@given(st.floats(min_value=0.2, max_value=1.0))
@settings(max_examples=40, deadline=None)
def test_mean_is_one(p):
    # E[Y] = 1 for every p; truncation negligible for p >= 0.2 at k = 2000
    assert excursions.excursion_mean(p, k_cap=2000) == pytest.approx(1.0, abs=1e-8)


def test_domain_errors():
    with pytest.raises(excursions.ExcursionDomainError):
        excursions.excursion_pmf(0.0, 5)
    with pytest.raises(excursions.ExcursionDomainError):
        excursions.excursion_pmf(1.2, 5)
    with pytest.raises(excursions.ExcursionDomainError):
        excursions.excursion_mgf_at_zstar(-0.1)


def test_mgf_values():
    val, z = excursions.excursion_mgf_at_zstar(0.5)
    assert z == pytest.approx(np.log(4 / 3), abs=1e-15)
    assert val == pytest.approx(1.5, abs=1e-10)
    val, z = excursions.excursion_mgf_at_zstar(1.0)
    assert z == pytest.approx(np.log(2.0), abs=1e-15)
    assert val == pytest.approx(2.0, abs=1e-10)
    val, _ = excursions.excursion_mgf_at_zstar(0.1)
    assert val == pytest.approx(1.1, abs=1e-10)


def test_mgf_matches_one_plus_p_generally():
    for p in (0.05, 0.3, 0.62, 0.9):
        val, _ = excursions.excursion_mgf_at_zstar(p)
        assert val == pytest.approx(1.0 + p, abs=1e-10)


def test_sampled_law_matches_oracle():
    ys, tele = excursions.sample_excursion_counts(
        60_000, 20_240_815, ring=48, solve_radius=256)
    assert ys.min() >= 0
    assert tele.min() >= 0
    counts = stats.counts_from_samples(ys)
    pmf = excursions.excursion_pmf(0.5, int(ys.max()))
    assert stats.total_variation(counts, pmf) < 0.02
    assert float(ys.mean()) == pytest.approx(1.0, abs=0.03)


def test_sampler_rejects_bad_targets():
    with pytest.raises(excursions.ExcursionDomainError):
        excursions.sample_excursion_counts(10, 1, target=(0, 0))
    with pytest.raises(excursions.ExcursionDomainError):
        excursions.sample_excursion_counts(10, 1, target=(99, 0), ring=48)
