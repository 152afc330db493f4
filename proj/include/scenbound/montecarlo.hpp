#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "scenbound/bounds.hpp"
#include "scenbound/geometry.hpp"
#include "scenbound/rng.hpp"

// Monte Carlo harness certifying the empirical violation rate of the
// half-plane scenario algorithm against a theoretical bound. Trials are
// independent, seeded per (seed, trial_index), and may run on any number of
// threads without changing a single bit of the output.

namespace scenbound {

struct ProblemConfig {
    Vec2 center{-3.0, 0.0};
    ConstraintDistribution distribution = ConstraintDistribution::circle();
    long long n_scenarios = 0;  // N, sampled per trial
    long long n_discard = 0;    // r, 0 disables discarding
    double epsilon = 0.0;       // risk tolerance defining a violation
    long long trials = 1;
    std::uint64_t seed = 0;

    void validate() const {
        distribution.validate();
        if (n_discard < 0 || n_scenarios < n_discard + 1)
            throw std::domain_error("problem config: need N >= r + 1");
        if (!(epsilon > 0.0) || epsilon > 1.0)
            throw std::domain_error("problem config: need eps in (0,1]");
        if (trials < 1) throw std::domain_error("problem config: need trials >= 1");
    }
};

struct TrialOutcome {
    Vec2 decision;
    double risk = 0.0;
    std::vector<int> support_indices;  // original scenario indices, ascending
    std::vector<int> kept_indices;     // after discarding, ascending
    bool violated = false;             // risk > epsilon
};

struct MonteCarloReport {
    long long trials = 0;
    long long violations = 0;
    double empirical_rate = 0.0;
    double exact_binomial_upper_95 = 1.0;  // one-sided Clopper-Pearson limit
    double theoretical_bound = 1.0;
    BoundKind bound_kind = BoundKind::new_consistent;
};

// Smallest p with P[Binomial(n, p) <= successes] <= alpha; the one-sided
// exact-binomial upper confidence limit. Returns 1 when successes == n.
inline double clopper_pearson_upper(long long successes, long long n, double alpha = 0.05) {
    if (n < 1 || successes < 0 || successes > n)
        throw std::domain_error("clopper_pearson_upper: need 0 <= successes <= n");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("clopper_pearson_upper: need alpha in (0,1)");
    if (successes == n) return 1.0;
    const double log_alpha = std::log(alpha);
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double tail = log_binomial_lower_tail(n, successes, mid).log_magnitude;
        (tail <= log_alpha ? hi : lo) = mid;
    }
    return hi;
}

inline TrialOutcome run_trial(const ProblemConfig& config, long long trial_index) {
    TrialRng rng(config.seed, std::uint64_t(trial_index));
    std::vector<HalfPlaneConstraint> scenarios(std::size_t(config.n_scenarios));
    for (auto& scenario : scenarios) scenario = sample_constraint(rng, config.distribution);

    TrialOutcome outcome;
    outcome.kept_indices = discard_select(scenarios, config.n_discard);
    std::vector<HalfPlaneConstraint> kept(outcome.kept_indices.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        kept[i] = scenarios[std::size_t(outcome.kept_indices[i])];

    outcome.decision = solve_min_norm(config.center, kept);
    outcome.risk = exact_risk(outcome.decision, config.center, config.distribution);
    for (int local : support_set(config.center, kept, outcome.decision))
        outcome.support_indices.push_back(outcome.kept_indices[std::size_t(local)]);
    outcome.violated = outcome.risk > config.epsilon;
    return outcome;
}

// All trials, in trial order. threads = 0 picks the hardware concurrency.
inline std::vector<TrialOutcome> run_all_trials(const ProblemConfig& config, int threads = 1) {
    config.validate();
    std::vector<TrialOutcome> outcomes(std::size_t(config.trials));
    if (threads == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : int(std::min(hw, 64u));
    }
    threads = int(std::min<long long>(threads, config.trials));
    if (threads <= 1) {
        for (long long t = 0; t < config.trials; ++t)
            outcomes[std::size_t(t)] = run_trial(config, t);
        return outcomes;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long long t = w; t < config.trials; t += threads)
                    outcomes[std::size_t(t)] = run_trial(config, t);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

inline MonteCarloReport make_report(const ProblemConfig& config,
                                    const std::vector<TrialOutcome>& outcomes, BoundKind kind,
                                    long long d) {
    MonteCarloReport report;
    report.trials = static_cast<long long>(outcomes.size());
    for (const auto& outcome : outcomes)
        if (outcome.violated) ++report.violations;
    report.empirical_rate = double(report.violations) / double(report.trials);
    report.exact_binomial_upper_95 = clopper_pearson_upper(report.violations, report.trials);
    report.theoretical_bound =
        bound_value(kind, BoundQuery{config.n_scenarios, d, config.n_discard, config.epsilon});
    report.bound_kind = kind;
    return report;
}

inline MonteCarloReport run_monte_carlo(const ProblemConfig& config, BoundKind kind, long long d,
                                        int threads = 1) {
    return make_report(config, run_all_trials(config, threads), kind, d);
}

}  // namespace scenbound
