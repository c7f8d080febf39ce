import pytest
from gmpy2 import mpq

from liftgen.errors import SamplingError
from liftgen.fol.structure import Model
from liftgen.fol.syntax import Pred
from liftgen.harness.oracle import exact_distribution, histogram, mln_exact_distribution
from liftgen.harness.presets import PRESETS, preset, preset_mln, preset_text
from liftgen.harness.report import (
    distribution_frame, ks_frame, model_distribution_frame, scaling_frame,
)
from liftgen.harness.statistics import (
    EmpiricalDistribution, count_vector, dkw_bound, indexed, ks_test, loglog_slope, model_index,
)
from liftgen.sampler.model_sampler import ModelSampler
from liftgen.sampler.rng import RandomSource
from liftgen.wfomc.counter import count_distribution, count_problem

E = Pred("E", 2)
Red = Pred("Red", 1)


def test_dkw_bound():
    assert dkw_bound(100000) == pytest.approx(0.0043, abs=1e-4)
    assert dkw_bound(100000, k=2) == pytest.approx(0.0087, abs=1e-4)
    with pytest.raises(ValueError):
        dkw_bound(0)
    with pytest.raises(ValueError):
        dkw_bound(10, alpha=1.5)


def test_model_index():
    model = Model.of([E(1, 2), E(2, 1)], [E], 2)
    assert model_index(model) == 0b0110
    assert model_index(Model.of([], [E], 2)) == 0
    assert count_vector(model, [E]) == (2,)


def test_no_isolated_vertices_distribution(gamma_g):
    distribution = exact_distribution(gamma_g(3))
    assert len(distribution) == 4
    assert set(distribution.values()) == {mpq(1, 4)}
    edge = sum(p for m, p in distribution.items() if m.holds(E(1, 2)))
    both = sum(p for m, p in distribution.items() if m.holds(E(1, 2)) and m.holds(E(1, 3)))
    assert edge == mpq(3, 4)
    assert both == mpq(1, 2)


def test_histogram_matches_lifted_distribution(two_colored):
    problem = two_colored(3)
    assert histogram(exact_distribution(problem), [Red]) == count_distribution(problem, [Red])


def test_mln_distribution_matches_reduction():
    preds = [Pred("fr", 2), Pred("sm", 1)]
    reference = mln_exact_distribution(preset_mln("friends-smokers", 2))
    assert sum(reference.values()) == 1
    assert histogram(reference, preds) == count_distribution(preset("friends-smokers", 2), preds)


def test_empirical_distribution_validation():
    with pytest.raises(ValueError):
        EmpiricalDistribution({0: 1}, 1, mode="bogus")
    with pytest.raises(ValueError):
        EmpiricalDistribution({0: 1}, 2)
    empirical = EmpiricalDistribution.from_outcomes([(1, 0), (1, 0), (0, 2)], mode="count")
    assert empirical.dimension == 2
    assert empirical.frequency((1, 0)) == pytest.approx(2 / 3)
    assert empirical.frequency((5, 5)) == 0


def test_ks_accepts_exact_sampler(gamma_g):
    problem = gamma_g(3)
    reference = indexed(exact_distribution(problem), problem.visible_vocabulary)
    models = [s.model for s in ModelSampler(problem).samples(2000, RandomSource(3))]
    samples = EmpiricalDistribution.from_models(models, vocabulary=problem.visible_vocabulary)
    result = ks_test(samples, reference, alpha=0.001)
    assert not result.rejected
    assert result.dimension == 1
    assert result.outcomes == 4


def test_ks_rejects_biased_samples(gamma_g):
    problem = gamma_g(3)
    reference = indexed(exact_distribution(problem), problem.visible_vocabulary)
    favourite = min(reference)
    result = ks_test(EmpiricalDistribution.from_outcomes([favourite] * 1000), reference)
    assert result.rejected
    assert result.max_deviation == pytest.approx(0.75)


def test_multivariate_ks():
    reference = {(0, 0): mpq(1, 2), (1, 1): mpq(1, 2)}
    exact = EmpiricalDistribution({(0, 0): 500, (1, 1): 500}, 1000, mode="count", dimension=2)
    result = ks_test(exact, reference)
    assert result.max_deviation == pytest.approx(0.0)
    assert result.dimension == 2
    assert result.dkw_bound == pytest.approx(dkw_bound(1000, k=2))
    skewed = EmpiricalDistribution({(0, 0): 1000}, 1000, mode="count", dimension=2)
    assert ks_test(skewed, reference).rejected


def test_ks_needs_samples():
    with pytest.raises(SamplingError):
        ks_test(EmpiricalDistribution({}, 0), {0: mpq(1)})


def test_loglog_slope():
    assert loglog_slope([1, 2, 4], [1.0, 4.0, 16.0]) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        loglog_slope([5], [0.1])


def test_presets():
    assert "friends-smokers" in PRESETS and PRESETS["friends-smokers"].mln
    assert preset_text("k-regular", 4, {"k": 3}).startswith("domain 4\n")
    assert "exists[=3]" in preset_text("k-regular", 4, {"k": 3})
    assert count_problem(preset("no-isolated-vertices", 3)) == 4
    with pytest.raises(KeyError):
        preset_text("missing", 3)
    with pytest.raises(KeyError):
        preset("functions", 3, {"weights": {"Nope": (2, 1)}})


def test_report_frames(symmetric_loopless):
    problem = symmetric_loopless(2)
    distribution = count_distribution(problem, [E])
    samples = EmpiricalDistribution({(0,): 1, (2,): 9}, 10, mode="count")
    frame = distribution_frame(distribution, [E], samples)
    assert list(frame.columns) == ["E", "probability", "p", "frequency"]
    assert list(frame["probability"]) == ["1/10", "9/10"]
    assert list(frame["frequency"]) == [pytest.approx(0.1), pytest.approx(0.9)]

    models = model_distribution_frame(exact_distribution(problem))
    assert list(models["index"]) == [0, 6]
    assert list(models["model"]) == ["", "E(1,2),E(2,1)"]

    result = ks_test(samples, distribution)
    ks = ks_frame({"edges": result})
    assert ks.loc[0, "problem"] == "edges"
    assert not ks.loc[0, "rejected"]

    scaling = scaling_frame([2, 4], [0.5, 1.0])
    assert list(scaling.columns) == ["n", "seconds"]


@pytest.mark.slow
def test_friends_smokers_count_vectors_pass_ks():
    problem = preset("friends-smokers", 3)
    preds = [Pred("fr", 2), Pred("sm", 1)]
    reference = count_distribution(problem, preds)
    models = [s.model for s in ModelSampler(problem).samples(3000, RandomSource(12))]
    samples = EmpiricalDistribution.from_models(models, "count", predicates=preds)
    result = ks_test(samples, reference, alpha=0.001)
    assert result.dimension == 2
    assert not result.rejected
