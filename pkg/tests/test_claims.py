"""Tests for the claim catalog: selection, verdict structure, and the
known honest disagreements."""

import pytest

from raysched.claims import (
    _INFORMATIONAL,
    ClaimConfig,
    claim_ids,
    run_claim_catalog,
)

FAST = ClaimConfig(trials=20_000)


@pytest.fixture(scope="module")
def full_catalog():
    return run_claim_catalog(FAST)


class TestCatalogStructure:
    def test_ids_unique_and_stable_order(self):
        ids = claim_ids()
        assert len(ids) == len(set(ids)) == 28
        assert ids[0] == "search-ratio-printed"
        assert ids[-1] == "expanding-turn-ceiling"

    def test_every_id_produces_checks(self, full_catalog):
        produced = {check.claim_id for check in full_catalog}
        assert produced == set(claim_ids())

    def test_informational_marking_matches_the_set(self, full_catalog):
        for check in full_catalog:
            assert check.informational == (check.claim_id in _INFORMATIONAL)

    def test_every_check_carries_params_and_finite_gap(self, full_catalog):
        import math

        for check in full_catalog:
            assert check.params
            assert math.isfinite(check.gap)


class TestSubsets:
    def test_prefix_selection(self):
        checks = run_claim_catalog(ClaimConfig(subset="sched-ratio-optimal"))
        assert len(checks) == 8
        assert all(check.claim_id == "sched-ratio-optimal" for check in checks)

    def test_comma_separated_prefixes(self):
        checks = run_claim_catalog(ClaimConfig(subset="rr-,contract-ceiling"))
        ids = {check.claim_id for check in checks}
        assert ids == {"rr-worst", "rr-asymptotic", "contract-ceiling"}

    def test_asserted_and_informational_partition(self):
        informational = run_claim_catalog(
            ClaimConfig(subset="informational", trials=2_000)
        )
        assert {c.claim_id for c in informational} == _INFORMATIONAL
        assert all(c.informational for c in informational)

    def test_unknown_prefix_selects_nothing(self):
        assert run_claim_catalog(ClaimConfig(subset="bogus")) == []


class TestVerdicts:
    def test_redundancy_ceiling_is_honestly_violated(self, full_catalog):
        checks = [c for c in full_catalog if c.claim_id == "fault-search-upper"]
        assert len(checks) == 12
        assert all(not c.holds for c in checks)
        assert all(c.gap > 0 for c in checks)
        # The smallest case: measured 9 against a ceiling of 2e + 1.
        import math

        first = checks[0]
        assert first.measured == pytest.approx(9.0, abs=1e-6)
        assert first.paper_value == pytest.approx(2.0 * math.e + 1.0)

    def test_redundancy_floor_holds(self, full_catalog):
        checks = [c for c in full_catalog if c.claim_id == "fault-search-lower"]
        assert len(checks) == 12
        assert all(c.holds for c in checks)

    def test_only_informational_claims_violate_besides_the_ceiling(
        self, full_catalog
    ):
        violated = {c.claim_id for c in full_catalog if not c.holds}
        asserted_violations = violated - _INFORMATIONAL
        assert asserted_violations == {"fault-search-upper"}

    def test_printed_small_case_formula_disagrees_with_the_walk(
        self, full_catalog
    ):
        checks = [c for c in full_catalog if c.claim_id == "search-ratio-printed"]
        assert checks[0].paper_value == pytest.approx(7.0)
        assert checks[0].measured == pytest.approx(9.0, abs=1e-6)
        assert not checks[0].holds and checks[0].informational

    def test_resweep_beats_plain_exponential_at_scale(self, full_catalog):
        (check,) = [c for c in full_catalog if c.claim_id == "nm-vs-exponential"]
        assert check.holds
        assert check.measured < check.paper_value

    def test_repeating_schedule_does_not_beat_rank_semantics(self, full_catalog):
        (check,) = [c for c in full_catalog if c.claim_id == "pseudo-vs-exponential"]
        assert not check.holds and check.informational
        assert check.measured == pytest.approx(8.0, abs=1e-6)
        assert check.paper_value == pytest.approx(6.75, abs=1e-6)


def test_catalog_deterministic():
    config = ClaimConfig(subset="randomized-ratio,sched-ratio-base", trials=5_000)
    assert run_claim_catalog(config) == run_claim_catalog(config)
