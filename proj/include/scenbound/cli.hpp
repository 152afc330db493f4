#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scenbound/exact.hpp"
#include "scenbound/invert.hpp"
#include "scenbound/montecarlo.hpp"

// Command implementations behind the scenbound tool. Each run_* function
// writes machine-readable records (single-line JSON objects, or CSV for
// tables) and returns the process exit code, so the commands are directly
// drivable from tests.

namespace scenbound::cli {

enum ExitCode : int {
    kOk = 0,
    kDomainError = 2,
    kInfeasible = 3,
    kResourceLimit = 4,
    kIoError = 5,
    kCertificationFailure = 6,
};

// 12 significant digits; magnitudes below 1e-300 print as 0.
inline std::string format_number(double v) {
    if (v > -1e-300 && v < 1e-300) return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string assumptions_warning(BoundKind k) {
    if (k == BoundKind::campi_consistent) return "assumes nondegeneracy";
    if (k == BoundKind::campi_discard) return "assumes nondegeneracy and conformity";
    if (k == BoundKind::romao_discard)
        return "assumes sequential nondegeneracy and cascade selection";
    return {};
}

inline void emit_assumptions_warning(BoundKind k, std::ostream& err) {
    const std::string warning = assumptions_warning(k);
    if (!warning.empty())
        err << "warning: " << to_string(k) << " is not distribution-free (" << warning << ")\n";
}

struct EvalParams {
    BoundKind kind = BoundKind::new_consistent;
    long long N = 0, d = 0, r = 0;
    double epsilon = 0.0;
    bool exact = false;          // hidden debugging path via the rational oracle
    std::string epsilon_text;    // exact parse of the flag as given
};

inline int run_eval(const EvalParams& p, std::ostream& out, std::ostream& err) {
    try {
        const std::string warning = assumptions_warning(p.kind);
        if (p.exact) {
            const auto eps = exact::rational_from_string(p.epsilon_text);
            const auto q = exact::exact_bound(p.kind, p.N, p.d, p.r, eps);
            std::ostringstream fraction;
            fraction << q;
            out << "{\"bound\":\"" << to_string(p.kind) << "\",\"N\":" << p.N << ",\"d\":" << p.d
                << ",\"r\":" << p.r << ",\"epsilon\":\"" << p.epsilon_text << "\",\"q\":\""
                << fraction.str() << "\",\"q_decimal\":" << format_number(q.convert_to<double>())
                << ",\"assumptions_warning\":"
                << (warning.empty() ? "null" : "\"" + warning + "\"") << "}\n";
        } else {
            const double q = bound_value(p.kind, BoundQuery{p.N, p.d, p.r, p.epsilon});
            out << "{\"bound\":\"" << to_string(p.kind) << "\",\"N\":" << p.N << ",\"d\":" << p.d
                << ",\"r\":" << p.r << ",\"epsilon\":" << format_number(p.epsilon)
                << ",\"q\":" << format_number(q) << ",\"assumptions_warning\":"
                << (warning.empty() ? "null" : "\"" + warning + "\"") << "}\n";
        }
        emit_assumptions_warning(p.kind, err);
        return kOk;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

struct InvertParams {
    BoundKind kind = BoundKind::new_consistent;
    long long N = 0, d = 0, r = 0;
    double beta = 0.0;
};

inline int run_invert(const InvertParams& p, std::ostream& out, std::ostream& err) {
    try {
        InversionTarget target{p.kind, p.beta, p.d, p.r, p.N, 0.0};
        const double eps = epsilon_for_confidence(target);
        out << "{\"bound\":\"" << to_string(p.kind) << "\",\"N\":" << p.N << ",\"d\":" << p.d
            << ",\"r\":" << p.r << ",\"beta\":" << format_number(p.beta)
            << ",\"epsilon\":" << format_number(eps) << "}\n";
        emit_assumptions_warning(p.kind, err);
        return kOk;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

struct DesignParams {
    BoundKind kind = BoundKind::new_consistent;
    long long d = 0, r = 0;
    double epsilon = 0.0, beta = 0.0;
};

inline int run_design(const DesignParams& p, std::ostream& out, std::ostream& err) {
    try {
        InversionTarget target{p.kind, p.beta, p.d, p.r, 0, p.epsilon};
        const long long n = sample_size_for(target);
        out << "{\"bound\":\"" << to_string(p.kind) << "\",\"d\":" << p.d << ",\"r\":" << p.r
            << ",\"epsilon\":" << format_number(p.epsilon) << ",\"beta\":" << format_number(p.beta)
            << ",\"N\":" << n << "}\n";
        emit_assumptions_warning(p.kind, err);
        return kOk;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

struct TableSpec {
    long long N = 0;
    double beta = 0.0;
    long long r = 0;
    long long d_from = 1, d_to = 1, d_step = 1;
    std::vector<BoundKind> bounds;
};

inline std::vector<BoundKind> default_table_bounds(long long r) {
    if (r == 0)
        return {BoundKind::floyd_consistent, BoundKind::campi_consistent,
                BoundKind::waitjudge_consistent, BoundKind::new_consistent};
    return {BoundKind::margellos_discard, BoundKind::campi_discard, BoundKind::romao_discard,
            BoundKind::new_discard};
}

// One row per grid d: inverted eps per bound, infeasible cells as the
// sentinel 1 plus the bound's name in the trailing marker column.
inline int run_table(const TableSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.d_step < 1) throw std::domain_error("table: need a positive d step");
        if (spec.bounds.empty()) throw std::domain_error("table: no bounds requested");
        std::ostringstream body;
        body << "d";
        for (BoundKind k : spec.bounds) body << "," << to_string(k);
        body << ",infeasible\n";
        for (long long d = spec.d_from; d <= spec.d_to; d += spec.d_step) {
            body << d;
            std::string infeasible;
            for (BoundKind k : spec.bounds) {
                InversionTarget target{k, spec.beta, d, spec.r, spec.N, 0.0};
                std::string cell;
                try {
                    cell = format_number(epsilon_for_confidence(target));
                } catch (const InfeasibleError&) {
                    cell = "1";
                    if (!infeasible.empty()) infeasible += ';';
                    infeasible += to_string(k);
                }
                body << "," << cell;
            }
            body << "," << infeasible << "\n";
        }
        out << body.str();
        if (!out) {
            err << "error: write failed\n";
            return kIoError;
        }
        return kOk;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

inline int run_table_to_path(const TableSpec& spec, const std::string& path, std::ostream& err) {
    if (path.empty() || path == "-") return run_table(spec, std::cout, err);
    std::ofstream file(path, std::ios::binary);  // LF line endings everywhere
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return kIoError;
    }
    const int code = run_table(spec, file, err);
    file.close();
    if (code == kOk && !file) {
        err << "error: write to '" << path << "' failed\n";
        return kIoError;
    }
    return code;
}

struct ValidateParams {
    ProblemConfig config;
    BoundKind kind = BoundKind::new_consistent;
    long long d = 2;  // compression size of the planar min-norm algorithm
    int threads = 1;
};

// Streams one JSON record per trial plus a summary record; exit 6 when a
// distribution-free bound fails certification (upper confidence limit above
// a conclusive theoretical bound).
inline int run_validate(const ValidateParams& p, std::ostream& out, std::ostream& err) {
    try {
        p.config.validate();
        const auto outcomes = run_all_trials(p.config, p.threads);
        const auto report = make_report(p.config, outcomes, p.kind, p.d);
        std::ostringstream body;
        for (std::size_t t = 0; t < outcomes.size(); ++t) {
            const auto& outcome = outcomes[t];
            body << "{\"trial\":" << t << ",\"risk\":" << format_number(outcome.risk)
                 << ",\"support_size\":" << outcome.support_indices.size()
                 << ",\"violated\":" << (outcome.violated ? "true" : "false") << "}\n";
        }
        const bool certified = report.exact_binomial_upper_95 <= report.theoretical_bound;
        const bool conclusive = report.theoretical_bound >= 0.05;
        const char* verdict = certified ? "pass" : (conclusive ? "fail" : "inconclusive");
        body << "{\"trials\":" << report.trials << ",\"violations\":" << report.violations
             << ",\"empirical_rate\":" << format_number(report.empirical_rate)
             << ",\"exact_binomial_upper_95\":" << format_number(report.exact_binomial_upper_95)
             << ",\"theoretical_bound\":" << format_number(report.theoretical_bound)
             << ",\"bound\":\"" << to_string(p.kind) << "\",\"certified\":\"" << verdict
             << "\"}\n";
        out << body.str();
        emit_assumptions_warning(p.kind, err);
        if (!certified && conclusive && is_distribution_free(p.kind)) {
            err << "certification failure: empirical upper limit "
                << format_number(report.exact_binomial_upper_95) << " exceeds bound "
                << format_number(report.theoretical_bound) << "\n";
            return kCertificationFailure;
        }
        return kOk;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

}  // namespace scenbound::cli
