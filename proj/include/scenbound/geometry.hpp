#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "scenbound/rng.hpp"

// The planar test-bed family: random half-plane constraints a.(x - c) <= 1
// with ||a|| <= 1, a min-norm consistent decision algorithm solved by
// candidate enumeration, a norm-based discard rule, and closed-form risk
// under the supported sampling distributions.

namespace scenbound {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Admissible decisions: { x : dot(a, x - c) <= 1 }, with ||a|| <= 1 so the
// unit ball around c is always feasible.
struct HalfPlaneConstraint {
    Vec2 a;
};

inline constexpr double kFeasibilityTol = 1e-9;   // constraint satisfaction slack
inline constexpr double kActivityTol = 1e-9;      // |a.(x-c) - 1| for active constraints
inline constexpr double kDegeneracyTol = 1e-12;   // parallel boundary-pair exclusion

enum class DistributionKind { circle_uniform, disk_uniform, discrete_atoms };

struct DiscreteAtom {
    Vec2 direction;
    double weight = 0.0;
};

struct ConstraintDistribution {
    DistributionKind kind = DistributionKind::circle_uniform;
    std::vector<DiscreteAtom> atoms;  // discrete_atoms only

    static ConstraintDistribution circle() { return {DistributionKind::circle_uniform, {}}; }
    static ConstraintDistribution disk() { return {DistributionKind::disk_uniform, {}}; }
    static ConstraintDistribution discrete(std::vector<DiscreteAtom> atoms) {
        ConstraintDistribution d{DistributionKind::discrete_atoms, std::move(atoms)};
        d.validate();
        return d;
    }

    void validate() const {
        if (kind != DistributionKind::discrete_atoms) return;
        if (atoms.empty()) throw std::domain_error("discrete distribution: no atoms");
        double total = 0.0;
        for (const auto& atom : atoms) {
            if (!(atom.weight > 0.0))
                throw std::domain_error("discrete distribution: weights must be positive");
            if (norm(atom.direction) > 1.0 + 1e-12)
                throw std::domain_error("discrete distribution: atom norm above 1");
            total += atom.weight;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::domain_error("discrete distribution: weights must sum to 1");
    }
};

inline HalfPlaneConstraint sample_constraint(TrialRng& rng, const ConstraintDistribution& dist) {
    switch (dist.kind) {
        case DistributionKind::circle_uniform: {
            const double theta = 2.0 * std::numbers::pi * rng.next_double();
            return {{std::cos(theta), std::sin(theta)}};
        }
        case DistributionKind::disk_uniform: {
            const double theta = 2.0 * std::numbers::pi * rng.next_double();
            const double radius = std::sqrt(rng.next_double());  // area-uniform
            return {{radius * std::cos(theta), radius * std::sin(theta)}};
        }
        case DistributionKind::discrete_atoms: {
            const double u = rng.next_double();
            double cum = 0.0;
            for (const auto& atom : dist.atoms) {
                cum += atom.weight;
                if (u < cum) return {atom.direction};
            }
            return {dist.atoms.back().direction};
        }
    }
    throw std::domain_error("sample_constraint: unknown distribution");
}

// Unique minimizer of ||x|| subject to dot(a_i, x - c) <= 1 for all i.
// Candidate enumeration: the origin, the projection of the origin onto each
// boundary line, and every boundary-pair intersection; the feasible candidate
// of minimal norm wins, with lexicographic (x, y) order on exact norm ties.
// Parallel boundary pairs (within kDegeneracyTol) contribute no candidate.
// The candidate set is permutation invariant, so the decision is too.
inline Vec2 solve_min_norm(Vec2 c, std::span<const HalfPlaneConstraint> constraints) {
    std::vector<double> offsets(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i)
        offsets[i] = 1.0 + dot(constraints[i].a, c);

    const auto feasible = [&](Vec2 p) {
        for (std::size_t i = 0; i < constraints.size(); ++i)
            if (dot(constraints[i].a, p) > offsets[i] + kFeasibilityTol) return false;
        return true;
    };

    bool found = false;
    Vec2 best{};
    std::tuple<double, double, double> best_key;
    const auto consider = [&](Vec2 p) {
        if (!feasible(p)) return;
        const std::tuple<double, double, double> key{norm2(p), p.x, p.y};
        if (!found || key < best_key) {
            found = true;
            best = p;
            best_key = key;
        }
    };

    consider({0.0, 0.0});
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const Vec2 a = constraints[i].a;
        const double n2 = norm2(a);
        if (n2 <= kDegeneracyTol * kDegeneracyTol) continue;  // vacuous constraint
        const double s = offsets[i] / n2;
        consider({s * a.x, s * a.y});
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        for (std::size_t j = i + 1; j < constraints.size(); ++j) {
            const Vec2 ai = constraints[i].a, aj = constraints[j].a;
            const double det = cross(ai, aj);
            if (std::abs(det) <= kDegeneracyTol) continue;
            const double bi = offsets[i], bj = offsets[j];
            consider({(bi * aj.y - bj * ai.y) / det, (ai.x * bj - aj.x * bi) / det});
        }
    }

    if (!found) throw std::runtime_error("solve_min_norm: no feasible candidate");
    return best;
}

// Smallest index set S with |S| <= 2 whose re-solve reproduces x (within
// kFeasibilityTol); searched as the empty set, then singletons among active
// constraints, then active pairs, each in lexicographic index order.
inline std::vector<int> support_set(Vec2 c, std::span<const HalfPlaneConstraint> constraints,
                                    Vec2 x) {
    const auto reproduces = [&](std::span<const HalfPlaneConstraint> subset) {
        const Vec2 y = solve_min_norm(c, subset);
        return norm2(y - x) <= kFeasibilityTol * kFeasibilityTol;
    };
    if (reproduces({})) return {};

    std::vector<int> active;
    for (std::size_t i = 0; i < constraints.size(); ++i)
        if (std::abs(dot(constraints[i].a, x - c) - 1.0) <= kActivityTol)
            active.push_back(int(i));

    HalfPlaneConstraint sub[2];
    for (int i : active) {
        sub[0] = constraints[std::size_t(i)];
        if (reproduces({sub, 1})) return {i};
    }
    for (std::size_t p = 0; p < active.size(); ++p) {
        for (std::size_t q = p + 1; q < active.size(); ++q) {
            sub[0] = constraints[std::size_t(active[p])];
            sub[1] = constraints[std::size_t(active[q])];
            if (reproduces({sub, 2})) return {active[p], active[q]};
        }
    }
    throw std::logic_error("support_set: no subset of size <= 2 reproduces the decision");
}

// Exact violation probability of decision x: the measure of constraints a
// with dot(a, x - c) > 1.
inline double exact_risk(Vec2 x, Vec2 c, const ConstraintDistribution& dist) {
    const Vec2 y = x - c;
    switch (dist.kind) {
        case DistributionKind::circle_uniform: {
            const double ny = norm(y);
            if (ny <= 1.0) return 0.0;
            return std::acos(1.0 / ny) / std::numbers::pi;  // arc fraction
        }
        case DistributionKind::disk_uniform: {
            const double ny = norm(y);
            if (ny <= 1.0) return 0.0;
            const double t = 1.0 / ny;
            // circular-segment area beyond the chord at distance t, over pi
            return (std::acos(t) - t * std::sqrt(1.0 - t * t)) / std::numbers::pi;
        }
        case DistributionKind::discrete_atoms: {
            double total = 0.0;
            for (const auto& atom : dist.atoms)
                if (dot(atom.direction, y) > 1.0) total += atom.weight;
            return total;
        }
    }
    throw std::domain_error("exact_risk: unknown distribution");
}

// Indices of the N-r smallest-norm constraints, ascending; norm ties keep
// the smaller index.
inline std::vector<int> discard_select(std::span<const HalfPlaneConstraint> constraints,
                                       long long r) {
    const long long n = static_cast<long long>(constraints.size());
    if (r < 0 || r > n) throw std::domain_error("discard_select: need 0 <= r <= N");
    std::vector<int> order(constraints.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        const double ni = norm2(constraints[std::size_t(i)].a);
        const double nj = norm2(constraints[std::size_t(j)].a);
        return std::tie(ni, i) < std::tie(nj, j);
    });
    order.resize(std::size_t(n - r));
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace scenbound
