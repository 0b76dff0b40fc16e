import pytest

from hecke_series.services.rng import MASK64, SplitMix64, mix64, suite_tag, trial_seed


class TestSplitMix64:
    def test_reference_stream_for_seed_zero(self):
        rng = SplitMix64(0)
        assert rng.next_u64() == 0xE220A8397B1DCDAF
        assert rng.next_u64() == 0x6E789E6AA1B965F4

    def test_outputs_fit_in_64_bits(self):
        rng = SplitMix64(MASK64)
        assert all(0 <= rng.next_u64() <= MASK64 for _ in range(100))

    def test_same_seed_same_stream(self):
        first, second = SplitMix64(42), SplitMix64(42)
        assert [first.next_u64() for _ in range(10)] == [second.next_u64() for _ in range(10)]

    def test_below_range(self):
        rng = SplitMix64(7)
        values = [rng.below(3) for _ in range(300)]
        assert set(values) == {0, 1, 2}

    def test_below_rejects_empty_range(self):
        with pytest.raises(ValueError):
            SplitMix64(1).below(0)

    def test_between_is_inclusive(self):
        rng = SplitMix64(11)
        values = {rng.between(-2, 2) for _ in range(500)}
        assert values == {-2, -1, 0, 1, 2}

    def test_choice(self):
        rng = SplitMix64(3)
        assert rng.choice(("only",)) == "only"


class TestTrialSeeds:
    def test_mix64_of_zero(self):
        assert mix64(0) == 0

    def test_suite_tag_is_crc32(self):
        # CRC-32 check value
        assert suite_tag("123456789") == 0xCBF43926

    def test_trials_get_distinct_seeds(self):
        seeds = {trial_seed(42, "algebra", t) for t in range(1000)}
        assert len(seeds) == 1000

    def test_suites_get_distinct_seeds(self):
        assert trial_seed(42, "algebra", 0) != trial_seed(42, "adjoint", 0)

    def test_first_trial_of_seed_zero(self):
        # With an empty tag the first trial seed is the first SplitMix64 output.
        assert trial_seed(0, "", 0) == SplitMix64(0).next_u64()
