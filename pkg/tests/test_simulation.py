import math

import numpy as np
import pytest

from anovabf.bayes_factors import Criterion, Model
from anovabf.consistency import EffectSizes
from anovabf.errors import DomainError
from anovabf.simulation import (
    FREQUENCY_CSV_HEADER,
    FrequencyTable,
    SimulationConfig,
    TruthSpec,
    make_alpha,
    make_two_way_effects,
    run_frequency_experiment,
    simulate_one_way,
)
from anovabf.sums_of_squares import one_way_ss


def stream(entropy, p, r, rep):
    seq = np.random.SeedSequence(entropy=entropy, spawn_key=(p, r, rep))
    return np.random.Generator(np.random.Philox(seq))


class TestTruthSpec:
    def test_effects_forbidden_under_smaller_models(self):
        with pytest.raises(DomainError):
            TruthSpec(model=Model.NULL, c_a=0.5)
        with pytest.raises(DomainError):
            TruthSpec(model=Model.FACTOR_A, c_b=0.5)
        with pytest.raises(DomainError):
            TruthSpec(model=Model.FACTOR_A, c_ab=0.5)
        with pytest.raises(DomainError):
            TruthSpec(model=Model.ADDITIVE, c_ab=0.5)

    def test_full_model_allows_everything(self):
        t = TruthSpec(model=Model.FULL, c_a=1.0, c_b=2.0, c_ab=0.5)
        assert t.c_ab == 0.5

    def test_negative_effect_rejected(self):
        with pytest.raises(DomainError):
            TruthSpec(model=Model.FACTOR_A, c_a=-1.0)

    def test_nonpositive_variance_rejected(self):
        with pytest.raises(DomainError):
            TruthSpec(model=Model.NULL, sigma2=0.0)


class TestSimulationConfig:
    def good_truth(self):
        return TruthSpec(model=Model.NULL)

    def test_defaults(self):
        cfg = SimulationConfig(p_list=(2,), r_list=(3,), truth=self.good_truth())
        assert cfg.replications == 2000
        assert cfg.seed == 0
        assert cfg.criteria == (Criterion.FB, Criterion.BIC)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"p_list": ()},
            {"r_list": ()},
            {"p_list": (1,)},
            {"r_list": (2, 1)},
            {"replications": 0},
            {"seed": -1},
            {"seed": 2**64},
            {"criteria": ()},
        ],
    )
    def test_invalid_configs_rejected(self, kwargs):
        base = dict(p_list=(2,), r_list=(2,), truth=self.good_truth())
        base.update(kwargs)
        with pytest.raises(DomainError):
            SimulationConfig(**base)


class TestMakeAlpha:
    def test_two_levels_unit_effect(self):
        np.testing.assert_array_equal(make_alpha(2, 1.0, 1.0), [1.0, -1.0])

    def test_three_levels_unit_effect(self):
        d = math.sqrt(1.5)
        np.testing.assert_allclose(make_alpha(3, 1.0, 1.0), [d, -d, 0.0], rtol=1e-15)

    def test_null_effect_gives_zeros(self):
        np.testing.assert_array_equal(make_alpha(7, 0.0, 3.0), np.zeros(7))

    @pytest.mark.parametrize("c_a", [0.0, 0.1, 0.5, 1.0, 2.0, 5.0])
    def test_constraints_across_level_counts(self, c_a):
        sigma2 = 2.7
        for p in range(2, 102):
            alpha = make_alpha(p, c_a, sigma2)
            assert alpha.shape == (p,)
            assert abs(alpha.sum()) <= 1e-12 * (1.0 + np.abs(alpha).max())
            size = float(alpha @ alpha) / (p * sigma2)
            np.testing.assert_allclose(size, c_a, rtol=1e-12, atol=1e-15)

    def test_single_level_rejected(self):
        with pytest.raises(DomainError):
            make_alpha(1, 1.0, 1.0)


class TestMakeTwoWayEffects:
    def test_smallest_pure_interaction(self):
        alpha, beta, inter = make_two_way_effects(2, 2, EffectSizes(c_ab=1.0), 1.0)
        np.testing.assert_array_equal(alpha, np.zeros(2))
        np.testing.assert_array_equal(beta, np.zeros(2))
        np.testing.assert_allclose(inter, [[1.0, -1.0], [-1.0, 1.0]], rtol=1e-15)

    def test_margins_vanish(self):
        e = EffectSizes(c_a=0.5, c_b=2.0, c_ab=1.5)
        alpha, beta, inter = make_two_way_effects(5, 4, e, 1.3)
        assert abs(alpha.sum()) < 1e-12
        assert abs(beta.sum()) < 1e-12
        np.testing.assert_allclose(inter.sum(axis=0), np.zeros(4), atol=1e-12)
        np.testing.assert_allclose(inter.sum(axis=1), np.zeros(5), atol=1e-12)

    def test_sizes_match_request(self):
        e = EffectSizes(c_a=0.5, c_b=2.0, c_ab=1.5)
        p, q, sigma2 = 6, 3, 0.7
        alpha, beta, inter = make_two_way_effects(p, q, e, sigma2)
        np.testing.assert_allclose(float(alpha @ alpha) / (p * sigma2), 0.5, rtol=1e-12)
        np.testing.assert_allclose(float(beta @ beta) / (q * sigma2), 2.0, rtol=1e-12)
        np.testing.assert_allclose(float((inter**2).sum()) / (p * q * sigma2), 1.5, rtol=1e-12)

    def test_second_factor_uses_same_construction(self):
        _, beta, _ = make_two_way_effects(4, 3, EffectSizes(c_b=1.0), 2.0)
        np.testing.assert_array_equal(beta, make_alpha(3, 1.0, 2.0))

    def test_no_effects_gives_zero_arrays(self):
        alpha, beta, inter = make_two_way_effects(3, 3, EffectSizes(), 1.0)
        assert not alpha.any() and not beta.any() and not inter.any()


class TestSimulateOneWay:
    def test_deterministic_given_stream_state(self):
        truth = TruthSpec(model=Model.FACTOR_A, c_a=1.0)
        a = simulate_one_way(3, 4, truth, stream(1, 3, 4, 0))
        b = simulate_one_way(3, 4, truth, stream(1, 3, 4, 0))
        np.testing.assert_array_equal(a.values, b.values)

    def test_shape(self):
        d = simulate_one_way(6, 3, TruthSpec(model=Model.NULL), stream(2, 6, 3, 0))
        assert (d.p, d.r) == (6, 3)

    def test_mean_structure_with_tiny_noise(self):
        truth = TruthSpec(model=Model.FACTOR_A, c_a=1.0, mu=10.0, sigma2=1e-12)
        d = simulate_one_way(4, 3, truth, stream(3, 4, 3, 0))
        expected = 10.0 + make_alpha(4, 1.0, 1e-12)
        np.testing.assert_allclose(d.values.mean(axis=1), expected, atol=1e-5)
        assert d.values.std(axis=1).max() < 1e-5

    def test_null_centers_on_grand_mean(self):
        truth = TruthSpec(model=Model.NULL, mu=-3.0, sigma2=1e-12)
        d = simulate_one_way(5, 2, truth, stream(4, 5, 2, 0))
        np.testing.assert_allclose(d.values, -3.0, atol=1e-5)

    def test_noise_scale(self):
        truth = TruthSpec(model=Model.NULL, sigma2=4.0)
        d = simulate_one_way(10, 10000, truth, stream(5, 10, 10000, 0))
        assert abs(d.values.var() / 4.0 - 1.0) < 0.02

    def test_two_way_truth_rejected(self):
        with pytest.raises(DomainError):
            simulate_one_way(3, 3, TruthSpec(model=Model.FULL), stream(6, 3, 3, 0))


class TestFrequencyExperiment:
    def small_cfg(self, **kwargs):
        base = dict(
            p_list=(2, 3),
            r_list=(2,),
            truth=TruthSpec(model=Model.FACTOR_A, c_a=1.0),
            replications=200,
            seed=11,
        )
        base.update(kwargs)
        return SimulationConfig(**base)

    def test_deterministic_repeat(self):
        a = run_frequency_experiment(self.small_cfg())
        b = run_frequency_experiment(self.small_cfg())
        assert a.frequencies == b.frequencies
        assert a.to_csv() == b.to_csv()

    def test_grid_composes_from_single_cells(self):
        grid = run_frequency_experiment(self.small_cfg())
        merged = {}
        for p in (2, 3):
            single = run_frequency_experiment(self.small_cfg(p_list=(p,)))
            merged.update(single.frequencies)
        assert grid.frequencies == merged

    def test_keys_and_range(self):
        table = run_frequency_experiment(self.small_cfg())
        assert set(table.frequencies) == {
            (c, p, 2) for c in (Criterion.FB, Criterion.BIC) for p in (2, 3)
        }
        assert all(0.0 <= v <= 1.0 for v in table.frequencies.values())

    def test_criteria_subset(self):
        table = run_frequency_experiment(self.small_cfg(criteria=(Criterion.FB,)))
        assert all(key[0] is Criterion.FB for key in table.frequencies)

    def test_csv_layout(self):
        table = run_frequency_experiment(self.small_cfg(p_list=(2,)))
        lines = table.to_csv().strip().split("\n")
        assert lines[0] == ",".join(FREQUENCY_CSV_HEADER)
        assert len(lines) == 3
        fields = lines[1].split(",")
        assert fields[1] == "A+1"
        assert float(fields[2]) == 1.0
        assert (fields[3], fields[4]) == ("2", "2")
        assert 0.0 <= float(fields[5]) <= 1.0
        assert fields[6] == "200"
        assert fields[7] == "11"

    def test_f_statistic_mean_matches_theory(self):
        # under the null the variance-ratio statistic is F(p-1, p(r-1));
        # its mean p(r-1)/(p(r-1)-2) checks the whole generation pipeline
        p, r, reps = 5, 10, 10000
        truth = TruthSpec(model=Model.NULL)
        total = 0.0
        for rep in range(reps):
            ss = one_way_ss(simulate_one_way(p, r, truth, stream(7, p, r, rep)))
            total += (ss.w_h / (p - 1)) / (ss.w_e / (p * (r - 1)))
        d2 = p * (r - 1)
        target = d2 / (d2 - 2)
        var_f = 2.0 * d2**2 * (p - 1 + d2 - 2) / ((p - 1) * (d2 - 2) ** 2 * (d2 - 4))
        assert abs(total / reps - target) < 3.0 * math.sqrt(var_f / reps)

    def test_weak_effect_frequency_fades_with_levels(self):
        # effect below the r=2 selection threshold: more levels, fewer hits
        freqs = []
        for p in (10, 50, 100):
            cfg = SimulationConfig(
                p_list=(p,),
                r_list=(2,),
                truth=TruthSpec(model=Model.FACTOR_A, c_a=0.1),
                replications=2000,
                seed=42,
                criteria=(Criterion.FB,),
            )
            table = run_frequency_experiment(cfg)
            freqs.append(table.frequencies[(Criterion.FB, p, 2)])
        assert freqs[0] >= freqs[1] >= freqs[2]
        assert freqs[2] <= 0.02

    def test_frequency_table_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            FrequencyTable(
                truth=TruthSpec(model=Model.NULL),
                replications=10,
                seed=0,
                frequencies={(Criterion.FB, 2, 2): 1.5},
            )
