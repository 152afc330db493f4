#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "scenbound/invert.hpp"
#include "scenbound/montecarlo.hpp"

using namespace scenbound;

namespace {

ProblemConfig circle_config() {
    ProblemConfig config;
    config.center = {-3.0, 0.0};
    config.distribution = ConstraintDistribution::circle();
    config.n_scenarios = 20;
    config.n_discard = 0;
    config.epsilon = 0.25;
    config.trials = 50;
    config.seed = 20240601;
    return config;
}

bool same_outcome(const TrialOutcome& a, const TrialOutcome& b) {
    return a.decision.x == b.decision.x && a.decision.y == b.decision.y && a.risk == b.risk &&
           a.support_indices == b.support_indices && a.kept_indices == b.kept_indices &&
           a.violated == b.violated;
}

}  // namespace

TEST_CASE("clopper-pearson upper confidence limit", "[montecarlo]") {
    // zero successes in one trial: 1 - 0.05^(1/1)
    CHECK(clopper_pearson_upper(0, 1) == Catch::Approx(0.95).margin(1e-10));
    CHECK(clopper_pearson_upper(0, 10) ==
          Catch::Approx(1.0 - std::pow(0.05, 0.1)).margin(1e-10));
    CHECK(clopper_pearson_upper(7, 7) == 1.0);
    for (long long v : {0LL, 1LL, 5LL, 19LL, 20LL}) {
        const double upper = clopper_pearson_upper(v, 20);
        CHECK(upper >= double(v) / 20.0);
        if (v < 20) {
            // the defining property: P[Bin(n, upper) <= v] = alpha at the limit
            CHECK(log_binomial_lower_tail(20, v, upper).to_probability() ==
                  Catch::Approx(0.05).margin(1e-9));
        }
    }
    CHECK_THROWS_AS(clopper_pearson_upper(3, 2), std::domain_error);
    CHECK_THROWS_AS(clopper_pearson_upper(-1, 2), std::domain_error);
}

TEST_CASE("trials are bit-identical across runs and thread counts", "[montecarlo]") {
    const auto config = circle_config();
    const auto first = run_all_trials(config, 1);
    const auto second = run_all_trials(config, 1);
    const auto parallel = run_all_trials(config, 4);
    REQUIRE(first.size() == second.size());
    REQUIRE(first.size() == parallel.size());
    for (std::size_t t = 0; t < first.size(); ++t) {
        REQUIRE(same_outcome(first[t], second[t]));
        REQUIRE(same_outcome(first[t], parallel[t]));
    }
    // a different trial index gives a different stream
    CHECK_FALSE(same_outcome(run_trial(config, 0), run_trial(config, 1)));
}

TEST_CASE("trial outcomes satisfy the structural invariants", "[montecarlo]") {
    auto config = circle_config();
    config.n_scenarios = 30;
    config.n_discard = 4;
    for (long long t = 0; t < 40; ++t) {
        const auto outcome = run_trial(config, t);
        REQUIRE(outcome.kept_indices.size() ==
                std::size_t(config.n_scenarios - config.n_discard));
        REQUIRE(outcome.support_indices.size() <= 2);
        for (int idx : outcome.support_indices) {
            const bool kept = std::find(outcome.kept_indices.begin(), outcome.kept_indices.end(),
                                        idx) != outcome.kept_indices.end();
            REQUIRE(kept);
        }
        REQUIRE(outcome.risk >= 0.0);
        REQUIRE(outcome.risk <= 1.0);
        REQUIRE(outcome.violated == (outcome.risk > config.epsilon));
    }
}

TEST_CASE("single-atom distribution yields a deterministic zero-risk decision", "[montecarlo]") {
    ProblemConfig config;
    config.center = {-3.0, 0.0};
    config.distribution = ConstraintDistribution::discrete({{{1.0, 0.0}, 1.0}});
    config.n_scenarios = 6;
    config.epsilon = 0.1;
    config.trials = 25;
    config.seed = 99;
    const auto outcomes = run_all_trials(config);
    for (const auto& outcome : outcomes) {
        CHECK(outcome.decision.x == Catch::Approx(-2.0).margin(1e-12));
        CHECK(outcome.risk == 0.0);
        CHECK_FALSE(outcome.violated);
        CHECK(outcome.support_indices.size() == 1);
        CHECK(outcome.decision.x == outcomes.front().decision.x);
        CHECK(outcome.decision.y == outcomes.front().decision.y);
    }
    const auto report = run_monte_carlo(config, BoundKind::new_consistent, 2);
    CHECK(report.violations == 0);
    CHECK(report.empirical_rate == 0.0);
    CHECK(report.exact_binomial_upper_95 >= report.empirical_rate);
}

TEST_CASE("report aggregates violations and the theoretical bound", "[montecarlo]") {
    auto config = circle_config();
    config.trials = 200;
    const auto outcomes = run_all_trials(config, 0);  // auto thread count
    const auto report = make_report(config, outcomes, BoundKind::new_consistent, 2);
    long long violations = 0;
    for (const auto& outcome : outcomes)
        if (outcome.violated) ++violations;
    CHECK(report.trials == 200);
    CHECK(report.violations == violations);
    CHECK(report.empirical_rate == Catch::Approx(double(violations) / 200.0));
    CHECK(report.exact_binomial_upper_95 >= report.empirical_rate);
    CHECK(report.theoretical_bound ==
          bound_value(BoundKind::new_consistent,
                      {config.n_scenarios, 2, config.n_discard, config.epsilon}));
    CHECK(report.bound_kind == BoundKind::new_consistent);
}

TEST_CASE("discarding down to a single kept constraint", "[montecarlo]") {
    // all scenarios are the same infeasible-origin constraint x1 <= -2;
    // discarding keeps exactly one and the decision lands on its boundary
    ProblemConfig config;
    config.center = {-3.0, 0.0};
    config.distribution = ConstraintDistribution::discrete({{{1.0, 0.0}, 1.0}});
    config.n_scenarios = 8;
    config.n_discard = 7;
    config.epsilon = 0.9;
    config.trials = 1;
    config.seed = 5150;
    const auto outcome = run_trial(config, 0);
    REQUIRE(outcome.kept_indices == std::vector<int>{0});  // norm ties keep the smallest index
    CHECK(outcome.decision.x == Catch::Approx(-2.0).margin(1e-12));
    CHECK(outcome.decision.y == Catch::Approx(0.0).margin(1e-12));
    CHECK(outcome.support_indices == std::vector<int>{0});
}

TEST_CASE("distribution-free bounds certify on 20k-trial runs", "[montecarlo][certify]") {
    ProblemConfig config;
    config.center = {-3.0, 0.0};
    config.distribution = ConstraintDistribution::circle();
    config.n_scenarios = 20;
    config.n_discard = 0;
    config.trials = 20'000;
    config.seed = 777001;
    for (BoundKind kind : {BoundKind::floyd_consistent, BoundKind::waitjudge_consistent}) {
        config.epsilon = epsilon_for_confidence({kind, 0.2, 2, 0, config.n_scenarios, 0.0});
        const auto report = run_monte_carlo(config, kind, 2, 0);
        CAPTURE(to_string(kind));
        REQUIRE(report.theoretical_bound >= 0.05);
        REQUIRE(report.exact_binomial_upper_95 <= report.theoretical_bound);
    }
    config.distribution = ConstraintDistribution::disk();
    config.n_scenarios = 40;
    config.n_discard = 4;
    config.seed = 777002;
    config.epsilon =
        epsilon_for_confidence({BoundKind::margellos_discard, 0.2, 2, 4, 40, 0.0});
    const auto report = run_monte_carlo(config, BoundKind::margellos_discard, 2, 0);
    REQUIRE(report.theoretical_bound >= 0.05);
    REQUIRE(report.exact_binomial_upper_95 <= report.theoretical_bound);
}

TEST_CASE("config validation", "[montecarlo]") {
    auto config = circle_config();
    config.n_discard = config.n_scenarios;  // leaves no kept scenario
    CHECK_THROWS_AS(config.validate(), std::domain_error);
    config = circle_config();
    config.epsilon = 0.0;
    CHECK_THROWS_AS(config.validate(), std::domain_error);
    config = circle_config();
    config.trials = 0;
    CHECK_THROWS_AS(config.validate(), std::domain_error);
}
