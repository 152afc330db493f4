#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenbound/bounds.hpp"

// Reference evaluation of all eight bounds in arbitrary-precision rational
// arithmetic. eps enters as an exact rational so the outputs are exact; the
// floating-point evaluators are certified against these values in the tests.

namespace scenbound::exact {

using BigInt = boost::multiprecision::cpp_int;
// Kept in canonical form by the backend: lowest terms, positive denominator.
using RationalProb = boost::multiprecision::cpp_rational;

inline BigInt binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial: need 0 <= k <= n");
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (long long i = 1; i <= k; ++i) {
        out *= (n - k + i);
        out /= i;  // exact: C(n-k+i, i) is an integer
    }
    return out;
}

inline BigInt ipow(const BigInt& base, long long e) {
    if (e < 0) throw std::domain_error("ipow: negative exponent");
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

// Parses "3/4", "0.75", "1", ".5" into an exact rational.
inline RationalProb rational_from_string(const std::string& text) {
    const auto bad = [&] { return std::domain_error("not a rational: '" + text + "'"); };
    const auto digits = [&](const std::string& s) {
        if (s.empty()) throw bad();
        BigInt value = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw bad();
            value = value * 10 + (c - '0');
        }
        return value;
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const BigInt d = digits(text.substr(slash + 1));
        if (d == 0) throw bad();
        return RationalProb(digits(text.substr(0, slash)), d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return RationalProb(digits(text));
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    const BigInt scale = ipow(BigInt(10), static_cast<long long>(frac.size()));
    BigInt n = (whole.empty() ? BigInt(0) : digits(whole)) * scale;
    if (!frac.empty()) n += digits(frac);
    return RationalProb(n, scale);
}

namespace detail {

inline void check_eps(const RationalProb& eps) {
    if (!(eps > 0) || eps > 1) throw std::domain_error("exact bound: need eps in (0,1]");
}

// sign of t_{m+1} - t_m for t_m = (1-eps)^{N-m} / C(m,d), via the exact
// cross-multiplied ratio test: t_{m+1} < t_m iff (m+1-d) b < (m+1)(b-a).
inline int step_sign(long long m, long long d, const BigInt& a, const BigInt& b) {
    if (a <= std::numeric_limits<int>::max() && b <= std::numeric_limits<int>::max() &&
        m < std::numeric_limits<int>::max()) {
        const long long bl = b.convert_to<long long>();
        const long long ul = bl - a.convert_to<long long>();
        const long long lhs = (m + 1 - d) * bl;
        const long long rhs = (m + 1) * ul;
        return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
    }
    const BigInt lhs = BigInt(m + 1 - d) * b;
    const BigInt rhs = BigInt(m + 1) * (b - a);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

}  // namespace detail

// Smallest exact argmin of t_m = (1-eps)^{N-m} / C(m,d) over m in {d,...,N}.
// Walks the exact signs of all adjacent differences; the sign sequence is
// verified to be nondecreasing (t unimodal), which pins the global smallest
// minimizer without any floating-point step.
inline long long exact_brute_min_m(long long N, long long d, const RationalProb& eps) {
    if (d < 0 || d > N) throw std::domain_error("exact_brute_min_m: need 0 <= d <= N");
    detail::check_eps(eps);
    const BigInt a = numerator(eps), b = denominator(eps);
    if (a == b) return d < N ? d : N;  // eps = 1: t_m = 0 for every m < N
    long long arg = N;
    int prev = -2;
    for (long long m = d; m <= N - 1; ++m) {
        const int s = detail::step_sign(m, d, a, b);
        if (prev != -2 && s < prev)
            throw std::logic_error("exact_brute_min_m: t_m is not unimodal");
        if (prev < 0 && s >= 0) arg = m;  // first non-decreasing step: global minimum
        prev = s;
    }
    if (prev == -2) arg = d;  // empty walk: single admissible m
    return arg;
}

// Exact clamped value of any of the eight bounds at rational eps.
inline RationalProb exact_bound(BoundKind k, long long N, long long d, long long r,
                                const RationalProb& eps) {
    detail::check_eps(eps);
    BoundQuery probe{N, d, r, 0.5};  // reuse the integer-domain validation
    validate_query(k, probe);
    const BigInt a = numerator(eps), b = denominator(eps);
    const BigInt u = b - a;  // numerator of 1 - eps over denominator b

    // sum_{i=0}^{j} C(N,i) a^i u^{N-i} / b^N
    const auto lower_tail = [&](long long j) -> RationalProb {
        if (j < 0) return RationalProb(0);
        if (j >= N) return RationalProb(1);
        if (u == 0) return RationalProb(0);  // every term carries a (1-eps) power
        BigInt coeff = 1;                    // C(N,i)
        BigInt pow_a = 1;                    // a^i
        BigInt pow_u = ipow(u, N);           // u^{N-i}
        BigInt sum = 0;
        for (long long i = 0; i <= j; ++i) {
            sum += coeff * pow_a * pow_u;
            coeff *= (N - i);
            coeff /= (i + 1);
            pow_a *= a;
            pow_u /= u;
        }
        return RationalProb(sum, ipow(b, N));
    };

    RationalProb q;
    switch (k) {
        case BoundKind::floyd_consistent:
            q = RationalProb(binomial(N, d) * ipow(u, N - d), ipow(b, N - d));
            break;
        case BoundKind::campi_consistent:
            q = lower_tail(d - 1);
            break;
        case BoundKind::waitjudge_consistent: {
            BigInt den = 0;
            BigInt pow_u = 1;                     // u^{m-d}
            BigInt pow_b = ipow(b, N - 1 - d);    // b^{N-1-m}
            BigInt coeff = 1;                     // C(m,d)
            for (long long m = d; m <= N - 1; ++m) {
                den += coeff * pow_u * pow_b;
                coeff *= (m + 1);
                coeff /= (m + 1 - d);
                pow_u *= u;
                if (m < N - 1) pow_b /= b;
            }
            q = RationalProb(BigInt(N) * binomial(N, d) * ipow(u, N - d), b * den);
            break;
        }
        case BoundKind::new_consistent: {
            const long long m = exact_brute_min_m(N, d, eps);
            q = RationalProb(binomial(N, d) * ipow(u, N - m), binomial(m, d) * ipow(b, N - m));
            break;
        }
        case BoundKind::margellos_discard: {
            if (u == 0 && r < N - d) {
                q = RationalProb(0);
            } else {
                BigInt coeff = 1;  // C(N-d,i)
                BigInt pow_a = 1;
                BigInt sum = 0;
                if (u == 0) {
                    sum = binomial(N - d, N - d) * ipow(a, N - d);  // only i = N-d survives
                } else {
                    BigInt pow_u = ipow(u, N - d);
                    for (long long i = 0; i <= r; ++i) {
                        sum += coeff * pow_a * pow_u;
                        coeff *= (N - d - i);
                        coeff /= (i + 1);
                        pow_a *= a;
                        pow_u /= u;
                    }
                }
                q = RationalProb(binomial(N, d) * sum, ipow(b, N - d));
            }
            break;
        }
        case BoundKind::campi_discard:
            q = RationalProb(binomial(r + d - 1, r)) * lower_tail(r + d - 1);
            break;
        case BoundKind::romao_discard:
            q = lower_tail(r + d - 1);
            break;
        case BoundKind::new_discard: {
            const long long H = N - r;
            const long long m = exact_brute_min_m(H, d, eps);
            q = RationalProb(binomial(N, r) * binomial(H, d) * ipow(u, H - m),
                             binomial(m, d) * ipow(b, H - m));
            break;
        }
        default:
            throw std::domain_error("exact_bound: unknown bound kind");
    }
    if (q > 1) return RationalProb(1);
    return q;
}

}  // namespace scenbound::exact
