#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "scenbound/binomial.hpp"

// Confidence bounds q(N, eps) for scenario decision algorithms with
// compression size at most d, evaluated in log domain and clamped to [0,1].
//
// Consistent algorithms (r = 0):
//   floyd:      C(N,d) (1-e)^{N-d}
//   campi:      sum_{i=0}^{d-1} C(N,i) e^i (1-e)^{N-i}          [nondegeneracy]
//   waitjudge:  N C(N,d) (1-e)^{N-d} / sum_{m=d}^{N-1} C(m,d) (1-e)^{m-d}
//   new:        C(N,d) min_{m=d..N} C(m,d)^{-1} (1-e)^{N-m}
//
// Sample-and-discard algorithms (discarding size r):
//   margellos:  C(N,d) sum_{i=0}^{r} C(N-d,i) e^i (1-e)^{N-d-i}
//   campi:      C(r+d-1,r) sum_{i=0}^{r+d-1} C(N,i) e^i (1-e)^{N-i}
//               [nondegeneracy + conformity]
//   romao:      sum_{i=0}^{r+d-1} C(N,i) e^i (1-e)^{N-i}
//               [sequential nondegeneracy + cascade selection]
//   new:        C(N,r) C(N-r,d) min_{m=d..N-r} C(m,d)^{-1} (1-e)^{N-r-m}

namespace scenbound {

enum class BoundKind {
    floyd_consistent,
    campi_consistent,
    waitjudge_consistent,
    new_consistent,
    margellos_discard,
    campi_discard,
    romao_discard,
    new_discard,
};

inline constexpr std::array<BoundKind, 8> kAllBoundKinds = {
    BoundKind::floyd_consistent,  BoundKind::campi_consistent,
    BoundKind::waitjudge_consistent, BoundKind::new_consistent,
    BoundKind::margellos_discard, BoundKind::campi_discard,
    BoundKind::romao_discard,     BoundKind::new_discard,
};

constexpr bool is_discard_bound(BoundKind k) {
    return k == BoundKind::margellos_discard || k == BoundKind::campi_discard ||
           k == BoundKind::romao_discard || k == BoundKind::new_discard;
}

// True for bounds whose hypotheses exclude some distributions (atoms break
// nondegeneracy), so they are not confidence bounds for every problem.
constexpr bool assumes_nondegeneracy(BoundKind k) {
    return k == BoundKind::campi_consistent || k == BoundKind::campi_discard ||
           k == BoundKind::romao_discard;
}

constexpr bool assumes_conformity_or_cascade(BoundKind k) {
    return k == BoundKind::campi_discard || k == BoundKind::romao_discard;
}

constexpr bool is_distribution_free(BoundKind k) {
    return !assumes_nondegeneracy(k) && !assumes_conformity_or_cascade(k);
}

inline std::string_view to_string(BoundKind k) {
    switch (k) {
        case BoundKind::floyd_consistent: return "floyd-consistent";
        case BoundKind::campi_consistent: return "campi-consistent";
        case BoundKind::waitjudge_consistent: return "waitjudge-consistent";
        case BoundKind::new_consistent: return "new-consistent";
        case BoundKind::margellos_discard: return "margellos-discard";
        case BoundKind::campi_discard: return "campi-discard";
        case BoundKind::romao_discard: return "romao-discard";
        case BoundKind::new_discard: return "new-discard";
    }
    return "?";
}

inline std::optional<BoundKind> parse_bound_kind(std::string_view name) {
    for (BoundKind k : kAllBoundKinds)
        if (name == to_string(k)) return k;
    return std::nullopt;
}

// The tuple (N, d, r, eps) parameterizing any bound evaluation. r stays 0
// for consistent bounds.
struct BoundQuery {
    long long N = 0;
    long long d = 0;
    long long r = 0;
    double epsilon = 0.0;
};

// Smallest admissible N for the kind at fixed (d, r).
constexpr long long min_sample_size(BoundKind k, long long d, long long r) {
    switch (k) {
        case BoundKind::waitjudge_consistent: return d + 1;
        case BoundKind::campi_discard:
        case BoundKind::romao_discard: return r + d - 1;
        case BoundKind::margellos_discard:
        case BoundKind::new_discard: return r + d;
        default: return d;
    }
}

inline void validate_query(BoundKind k, const BoundQuery& q) {
    if (q.N < 0 || q.d < 0 || q.r < 0)
        throw std::domain_error("bound query: need N, d, r >= 0");
    if (!(q.epsilon > 0.0) || q.epsilon > 1.0)
        throw std::domain_error("bound query: need eps in (0,1]");
    if (!is_discard_bound(k) && q.r != 0)
        throw std::domain_error("bound query: consistent bounds need r = 0");
    if ((k == BoundKind::campi_discard || k == BoundKind::romao_discard) && q.d < 1)
        throw std::domain_error("bound query: this discard bound needs d >= 1");
    if (q.N < min_sample_size(k, q.d, q.r))
        throw std::domain_error("bound query: N below the bound's domain");
}

// Smallest minimizer of t_m = C(m,d)^{-1} (1-eps)^{N-m} over m in {d,...,N}.
// The step ratio t_{m+1}/t_m = (m+1-d) / ((m+1)(1-eps)) is nondecreasing in
// m, so t is unimodal and the smallest minimizer is ceil(d/eps) - 1 clamped
// into [d, N].
inline long long optimal_m(long long N, long long d, double epsilon) {
    if (d < 0 || d > N) throw std::domain_error("optimal_m: need 0 <= d <= N");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::domain_error("optimal_m: need eps in (0,1]");
    double q = double(d) / epsilon;
    // A quotient within a few ulps of an integer is an exact tie between two
    // adjacent minimizers; snap it so the tie breaks toward the smaller m.
    const double nearest = std::round(q);
    if (std::abs(q - nearest) <= 4e-12 * std::max(nearest, 1.0)) q = nearest;
    const double m = std::ceil(q) - 1.0;
    if (!(m > double(d))) return d;
    if (m >= double(N)) return N;
    return static_cast<long long>(m);
}

namespace detail {

// log of C(H,d) * min_{m=d..H} C(m,d)^{-1} (1-eps)^{H-m}. The m = d term is
// always folded into the min, so the result never exceeds the plain
// C(H,d)(1-eps)^{H-d} evaluation, even under floating-point rounding.
inline double log_new_bound(long long H, long long d, double eps) {
    const long long m = optimal_m(H, d, eps);
    const double t_at_m = -lchoose(m, d) + log_pow1m(eps, H - m);
    const double t_at_d = log_pow1m(eps, H - d);
    return lchoose(H, d) + std::min(t_at_m, t_at_d);
}

}  // namespace detail

// Natural log of the raw (unclamped) bound value.
inline double log_bound_raw(BoundKind k, const BoundQuery& q) {
    validate_query(k, q);
    const long long N = q.N, d = q.d, r = q.r;
    const double eps = q.epsilon;
    switch (k) {
        case BoundKind::floyd_consistent:
            return detail::lchoose(N, d) + detail::log_pow1m(eps, N - d);
        case BoundKind::campi_consistent:
            return log_binomial_lower_tail(N, d - 1, eps).log_magnitude;
        case BoundKind::waitjudge_consistent: {
            const double num =
                std::log(double(N)) + detail::lchoose(N, d) + detail::log_pow1m(eps, N - d);
            // denominator terms t_m = C(m,d)(1-eps)^{m-d} have the decreasing
            // step ratio ((m+1)/(m+1-d))(1-eps); once it drops below 1 the
            // remaining tail is at most t_m * r/(1-r), so the sum can stop as
            // soon as that bound is negligible against what is accumulated.
            LogSumExp den;
            for (long long m = d; m <= N - 1; ++m) {
                const double term = detail::lchoose(m, d) + detail::log_pow1m(eps, m - d);
                den.add(term);
                const double ratio = (double(m + 1) / double(m + 1 - d)) * (1.0 - eps);
                if (ratio < 1.0) {
                    const double tail = term + std::log(ratio) - std::log1p(-ratio);
                    if (tail < den.value() - 40.0) break;  // tail/sum < e^-40 ~ 4e-18
                }
            }
            return num - den.value();
        }
        case BoundKind::new_consistent:
            return detail::log_new_bound(N, d, eps);
        case BoundKind::margellos_discard: {
            const double log_eps = eps > 0.0 ? std::log(eps) : kNegInf;
            LogSumExp tail;
            for (long long i = 0; i <= r; ++i) {
                double term = detail::lchoose(N - d, i);
                if (i > 0) term += double(i) * log_eps;
                term += detail::log_pow1m(eps, N - d - i);
                tail.add(term);
            }
            return detail::lchoose(N, d) + tail.value();
        }
        case BoundKind::campi_discard:
            return detail::lchoose(r + d - 1, r) +
                   log_binomial_lower_tail(N, r + d - 1, eps).log_magnitude;
        case BoundKind::romao_discard:
            return log_binomial_lower_tail(N, r + d - 1, eps).log_magnitude;
        case BoundKind::new_discard:
            return detail::lchoose(N, r) + detail::log_new_bound(N - r, d, eps);
    }
    throw std::domain_error("log_bound_raw: unknown bound kind");
}

// Clamped bound value in [0,1].
inline double bound_value(BoundKind k, const BoundQuery& q) {
    return LogValue::from_log(log_bound_raw(k, q)).to_probability();
}

inline double bound_consistent_floyd(const BoundQuery& q) {
    return bound_value(BoundKind::floyd_consistent, q);
}
inline double bound_consistent_campi(const BoundQuery& q) {
    return bound_value(BoundKind::campi_consistent, q);
}
inline double bound_consistent_waitjudge(const BoundQuery& q) {
    return bound_value(BoundKind::waitjudge_consistent, q);
}
inline double bound_consistent_new(const BoundQuery& q) {
    return bound_value(BoundKind::new_consistent, q);
}
inline double bound_discard_margellos(const BoundQuery& q) {
    return bound_value(BoundKind::margellos_discard, q);
}
inline double bound_discard_campi(const BoundQuery& q) {
    return bound_value(BoundKind::campi_discard, q);
}
inline double bound_discard_romao(const BoundQuery& q) {
    return bound_value(BoundKind::romao_discard, q);
}
inline double bound_discard_new(const BoundQuery& q) {
    return bound_value(BoundKind::new_discard, q);
}

}  // namespace scenbound
