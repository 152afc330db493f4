#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scenbound {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A nonnegative quantity carried as its natural log; -inf encodes zero.
// Values are only exponentiated at the final conversion to a probability,
// which clamps into [0,1]. Intermediate magnitudes like C(500,250) would
// overflow a double, their logs do not.
struct LogValue {
    double log_magnitude = kNegInf;

    static LogValue from_log(double lm) { return LogValue{lm}; }
    static LogValue zero() { return LogValue{kNegInf}; }
    static LogValue one() { return LogValue{0.0}; }

    // min(1, exp(log_magnitude)); exact 1.0 whenever the raw value is >= 1.
    double to_probability() const {
        if (log_magnitude >= 0.0) return 1.0;
        return std::exp(log_magnitude);
    }

    friend LogValue operator*(LogValue a, LogValue b) {
        return LogValue{a.log_magnitude + b.log_magnitude};
    }
};

// Streaming max-shifted accumulator for log(sum_i exp(x_i)).
class LogSumExp {
  public:
    void add(double x) {
        if (x == kNegInf) return;
        if (x <= max_) {
            sum_ += std::exp(x - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        }
    }

    double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

  private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

namespace detail {

// lgamma(n+1), table-backed for the integer range the evaluators hit in loops.
inline double log_factorial(long long n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(8192);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(double(i) + 1.0);
        return t;
    }();
    if (n >= 0 && n < static_cast<long long>(table.size())) return table[std::size_t(n)];
    return std::lgamma(double(n) + 1.0);
}

}  // namespace detail

// ln C(n,k); exact 0 for k == 0 and k == n.
inline LogValue log_binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("log_binomial: need 0 <= k <= n");
    if (k == 0 || k == n) return LogValue::one();
    return LogValue::from_log(detail::log_factorial(n) - detail::log_factorial(k) -
                              detail::log_factorial(n - k));
}

namespace detail {

inline double lchoose(long long n, long long k) { return log_binomial(n, k).log_magnitude; }

// log((1-eps)^p) with the 0^0 = 1 convention.
inline double log_pow1m(double eps, long long p) {
    if (p == 0) return 0.0;
    if (eps >= 1.0) return kNegInf;
    return double(p) * std::log1p(-eps);
}

}  // namespace detail

// log of the binomial lower tail sum_{i=0}^{j} C(N,i) eps^i (1-eps)^{N-i}.
// j < 0 is the empty sum (zero); j >= N is the full sum (one, exactly).
inline LogValue log_binomial_lower_tail(long long N, long long j, double eps) {
    if (N < 0) throw std::domain_error("log_binomial_lower_tail: need N >= 0");
    if (!(eps >= 0.0) || eps > 1.0)
        throw std::domain_error("log_binomial_lower_tail: need eps in [0,1]");
    if (j < 0) return LogValue::zero();
    if (j >= N) return LogValue::one();
    const double log_eps = eps > 0.0 ? std::log(eps) : kNegInf;
    LogSumExp acc;
    for (long long i = 0; i <= j; ++i) {
        double term = detail::lchoose(N, i);
        if (i > 0) term += double(i) * log_eps;
        term += detail::log_pow1m(eps, N - i);
        acc.add(term);
    }
    return LogValue::from_log(acc.value());
}

}  // namespace scenbound
