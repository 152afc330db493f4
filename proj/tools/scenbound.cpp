#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "scenbound/cli.hpp"

// scenbound: evaluate, invert, and empirically validate compression-based
// confidence bounds for scenario decision making.
//
// Exit codes: 0 success/certified, 2 domain error, 3 infeasible inversion,
// 4 resource limit, 5 I/O error, 6 certification failure.

namespace {

using scenbound::BoundKind;

BoundKind parse_bound_or_throw(const std::string& name) {
    if (auto kind = scenbound::parse_bound_kind(name)) return *kind;
    std::string known;
    for (BoundKind k : scenbound::kAllBoundKinds) {
        if (!known.empty()) known += ", ";
        known += scenbound::to_string(k);
    }
    throw CLI::ValidationError("--bound", "unknown bound '" + name + "' (one of: " + known + ")");
}

std::vector<BoundKind> parse_bound_list(const std::string& csv) {
    std::vector<BoundKind> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string item =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(parse_bound_or_throw(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

scenbound::ConstraintDistribution parse_distribution(const std::string& name,
                                                     const std::vector<std::string>& atom_flags) {
    using scenbound::ConstraintDistribution;
    if (name == "circle") return ConstraintDistribution::circle();
    if (name == "disk") return ConstraintDistribution::disk();
    if (name != "discrete")
        throw CLI::ValidationError("--dist", "expected circle, disk, or discrete");
    if (atom_flags.empty())
        throw CLI::ValidationError("--atom", "discrete distribution needs at least one atom");
    std::vector<scenbound::DiscreteAtom> atoms;
    for (const std::string& flag : atom_flags) {
        double ax = 0.0, ay = 0.0, w = 0.0;
        if (std::sscanf(flag.c_str(), "%lf,%lf,%lf", &ax, &ay, &w) != 3)
            throw CLI::ValidationError("--atom", "expected 'ax,ay,weight', got '" + flag + "'");
        atoms.push_back({{ax, ay}, w});
    }
    return ConstraintDistribution::discrete(std::move(atoms));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compression-based confidence bounds for scenario decision making"};
    app.require_subcommand(1);

    std::string bound_name = "new-consistent";
    long long N = 0, d = 0, r = 0;
    double epsilon = 0.0, beta = 0.0;

    auto* eval = app.add_subcommand("eval", "evaluate a bound q(N, eps)");
    std::string epsilon_text;
    bool exact = false;
    eval->add_option("--bound", bound_name, "bound kind")->required();
    eval->add_option("--N", N, "sample size")->required();
    eval->add_option("--d", d, "compression-size upper bound")->required();
    eval->add_option("--r", r, "discarding size")->default_val(0);
    eval->add_option("--eps", epsilon_text, "risk tolerance in (0,1]")->required();
    eval->add_flag("--exact", exact, "evaluate with the exact rational oracle")->group("");

    auto* invert = app.add_subcommand("invert", "smallest eps with q(N, eps) <= beta");
    invert->add_option("--bound", bound_name, "bound kind")->required();
    invert->add_option("--N", N, "sample size")->required();
    invert->add_option("--d", d, "compression-size upper bound")->required();
    invert->add_option("--r", r, "discarding size")->default_val(0);
    invert->add_option("--beta", beta, "target confidence level in (0,1)")->required();

    auto* design = app.add_subcommand("design", "minimal N with q(N, eps) <= beta");
    design->add_option("--bound", bound_name, "bound kind")->required();
    design->add_option("--d", d, "compression-size upper bound")->required();
    design->add_option("--r", r, "discarding size")->default_val(0);
    design->add_option("--eps", epsilon, "risk tolerance in (0,1)")->required();
    design->add_option("--beta", beta, "target confidence level in (0,1)")->required();

    auto* table = app.add_subcommand("table", "CSV of inverted eps over a d grid");
    std::string bounds_csv, output_path = "-";
    long long d_from = 1, d_to = 1, d_step = 1;
    table->add_option("--N", N, "sample size")->required();
    table->add_option("--beta", beta, "target confidence level in (0,1)")->required();
    table->add_option("--r", r, "discarding size")->default_val(0);
    table->add_option("--d-from", d_from, "first grid d")->required();
    table->add_option("--d-to", d_to, "last grid d")->required();
    table->add_option("--d-step", d_step, "grid step")->default_val(1);
    table->add_option("--bounds", bounds_csv,
                      "comma-separated bound kinds (default: the four for this r)");
    table->add_option("--output", output_path, "output path, '-' for stdout")->default_val("-");

    auto* validate = app.add_subcommand("validate", "Monte Carlo certification run");
    std::vector<double> center{-3.0, 0.0};
    std::string dist_name = "circle";
    std::vector<std::string> atom_flags;
    long long trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;
    validate->add_option("--center", center, "constraint anchor c")->expected(2);
    validate->add_option("--dist", dist_name, "circle | disk | discrete")->default_val("circle");
    validate->add_option("--atom", atom_flags, "discrete atom 'ax,ay,weight' (repeatable)");
    validate->add_option("--N", N, "scenarios per trial")->required();
    validate->add_option("--r", r, "discarding size")->default_val(0);
    validate->add_option("--eps", epsilon, "risk tolerance in (0,1]")->required();
    validate->add_option("--trials", trials, "Monte Carlo repetitions")->required();
    validate->add_option("--seed", seed, "reproducibility seed")->default_val(0);
    validate->add_option("--bound", bound_name, "bound kind to certify")->required();
    validate->add_option("--d", d, "compression-size upper bound")->default_val(2);
    validate->add_option("--threads", threads, "worker threads, 0 = auto")->default_val(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            scenbound::cli::EvalParams params;
            params.kind = parse_bound_or_throw(bound_name);
            params.N = N;
            params.d = d;
            params.r = r;
            params.epsilon_text = epsilon_text;
            params.epsilon = std::stod(epsilon_text);
            params.exact = exact;
            return scenbound::cli::run_eval(params, std::cout, std::cerr);
        }
        if (invert->parsed()) {
            scenbound::cli::InvertParams params{parse_bound_or_throw(bound_name), N, d, r, beta};
            return scenbound::cli::run_invert(params, std::cout, std::cerr);
        }
        if (design->parsed()) {
            scenbound::cli::DesignParams params{parse_bound_or_throw(bound_name), d, r, epsilon,
                                                beta};
            return scenbound::cli::run_design(params, std::cout, std::cerr);
        }
        if (table->parsed()) {
            scenbound::cli::TableSpec spec;
            spec.N = N;
            spec.beta = beta;
            spec.r = r;
            spec.d_from = d_from;
            spec.d_to = d_to;
            spec.d_step = d_step;
            spec.bounds = bounds_csv.empty() ? scenbound::cli::default_table_bounds(r)
                                             : parse_bound_list(bounds_csv);
            return scenbound::cli::run_table_to_path(spec, output_path, std::cerr);
        }
        scenbound::cli::ValidateParams params;
        params.config.center = {center[0], center[1]};
        params.config.distribution = parse_distribution(dist_name, atom_flags);
        params.config.n_scenarios = N;
        params.config.n_discard = r;
        params.config.epsilon = epsilon;
        params.config.trials = trials;
        params.config.seed = seed;
        params.kind = parse_bound_or_throw(bound_name);
        params.d = d;
        params.threads = threads;
        return scenbound::cli::run_validate(params, std::cout, std::cerr);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scenbound::cli::kDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scenbound::cli::kDomainError;
    }
}
