#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "permb/bethe2.hpp"
#include "permb/bethe_vi.hpp"
#include "permb/cycle_index.hpp"
#include "permb/experiments.hpp"
#include "permb/matrix.hpp"
#include "permb/verify.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit(const json& j) {
    std::cout << j.dump(2) << "\n";
}

permb::Distribution parse_dist(const std::string& s) {
    auto colon = s.find(':');
    std::string name = s.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::istringstream in(s.substr(colon + 1));
        std::string cell;
        while (std::getline(in, cell, ',')) args.push_back(std::stod(cell));
    }
    if (name == "uniform" && args.size() == 2)
        return permb::Distribution::uniform(args[0], args[1]);
    if (name == "exponential" && args.size() == 1)
        return permb::Distribution::exponential(args[0]);
    if (name == "constant" && args.size() == 1)
        return permb::Distribution::constant(args[0]);
    if (name == "two-point" && args.size() == 3)
        return permb::Distribution::two_point(args[0], args[1], args[2]);
    throw std::invalid_argument("unrecognized distribution: " + s);
}

json value_report(double value, const std::string& method, std::size_t n) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["value"] = std::stod(format_double(value));
    j["value_str"] = format_double(value);
    if (value > 0.0) j["log_value"] = std::stod(format_double(std::log(value)));
    j["method"] = method;
    j["n"] = n;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permanent / Bethe-permanent toolbox"};
    app.require_subcommand(1);

    std::string input_path, method = "ryser", weights = "all-one", dist_str = "uniform:0,1";
    std::string output_path, format = "csv";
    std::size_t n = 0, count = 1000, max_iter = 100000, max_n = 4, threads = 1;
    std::uint64_t seed = 1;
    double tol = 1e-8, theta1 = 1.0, theta2 = 1.0, theta3 = 1.0;
    bool include_bethe = false, summary = false;

    auto* cmd_perm = app.add_subcommand("perm", "exact permanent of a matrix file");
    cmd_perm->add_option("--input", input_path)->required();
    cmd_perm->add_option("--method", method)->check(CLI::IsMember({"naive", "ryser", "log"}));

    auto* cmd_b2 = app.add_subcommand("bethe2", "degree-2 Bethe permanent");
    cmd_b2->add_option("--input", input_path)->required();
    std::string b2_method = "grouped";
    cmd_b2->add_option("--method", b2_method)
        ->check(CLI::IsMember({"pairsum", "grouped", "covers", "nfg"}));

    auto* cmd_bethe = app.add_subcommand("bethe", "Bethe permanent via free-energy minimization");
    cmd_bethe->add_option("--input", input_path)->required();
    cmd_bethe->add_option("--tol", tol);
    cmd_bethe->add_option("--max-iter", max_iter);

    auto* cmd_zindex = app.add_subcommand("zindex", "cycle index Z(S_n)");
    cmd_zindex->add_option("--n", n)->required();
    cmd_zindex->add_option("--weights", weights,
                           "all-one (z_1=1, z_{l>=2}=1/2) or uniform:z1,zrest");

    auto* cmd_psi = app.add_subcommand("psi", "Psi_n(theta1, theta2, theta3)");
    cmd_psi->add_option("--n", n)->required();
    cmd_psi->add_option("--theta1", theta1)->required();
    cmd_psi->add_option("--theta2", theta2)->required();
    cmd_psi->add_option("--theta3", theta3)->required();

    auto* cmd_exp = app.add_subcommand("experiment", "random-matrix scatter harness");
    cmd_exp->add_option("--n", n)->required();
    cmd_exp->add_option("--count", count);
    cmd_exp->add_option("--seed", seed);
    cmd_exp->add_option("--dist", dist_str);
    cmd_exp->add_flag("--include-bethe", include_bethe);
    cmd_exp->add_flag("--summary", summary);
    cmd_exp->add_option("--output", output_path);
    cmd_exp->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_exp->add_option("--threads", threads);

    auto* cmd_verify = app.add_subcommand("verify", "cross-oracle identity battery");
    std::string suite = "all";
    cmd_verify->add_option("--suite", suite);
    cmd_verify->add_option("--max-n", max_n);
    cmd_verify->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (cmd_perm->parsed()) {
            permb::NonNegMatrix a = permb::load_matrix(input_path);
            json j;
            if (method == "naive") {
                j = value_report(permb::permanent_naive(a), "naive", a.n());
            } else if (method == "log") {
                permb::LogValue lv = permb::log_permanent(a);
                j["schema_version"] = kSchemaVersion;
                j["is_zero"] = lv.is_zero;
                if (!lv.is_zero) {
                    j["log_value"] = std::stod(format_double(lv.log_magnitude));
                    j["value"] = std::stod(format_double(lv.to_double()));
                }
                j["method"] = "log";
                j["n"] = a.n();
            } else {
                j = value_report(permb::permanent_ryser(a), "ryser", a.n());
            }
            emit(j);
        } else if (cmd_b2->parsed()) {
            permb::NonNegMatrix a = permb::load_matrix(input_path);
            double v = 0.0;
            if (b2_method == "pairsum") v = permb::bethe2_pairsum(a);
            else if (b2_method == "grouped") v = permb::bethe2_grouped(a);
            else if (b2_method == "covers") v = permb::bethe2_cover_average(a);
            else v = std::sqrt(permb::zhat_partition(a));
            emit(value_report(v, b2_method, a.n()));
        } else if (cmd_bethe->parsed()) {
            permb::NonNegMatrix a = permb::load_matrix(input_path);
            permb::BetheResult r = permb::bethe_permanent(a, tol, max_iter);
            json j = value_report(r.value, "free-energy-minimization", a.n());
            j["log_value"] = std::stod(format_double(r.log_value));
            j["residual"] = std::stod(format_double(r.residual));
            j["iterations"] = r.iterations;
            j["converged"] = r.converged;
            j["tol"] = tol;
            j["max_iter"] = max_iter;
            emit(j);
        } else if (cmd_zindex->parsed()) {
            double v;
            std::string used = weights;
            if (weights == "all-one") {
                v = permb::z_all_one(n);
            } else if (weights.rfind("uniform:", 0) == 0) {
                std::istringstream in(weights.substr(8));
                std::string c1, c2;
                std::getline(in, c1, ',');
                std::getline(in, c2, ',');
                v = permb::cycle_index(
                    n, permb::CycleIndexWeights::head_tail(std::stod(c1), std::stod(c2)));
            } else {
                throw std::invalid_argument("unrecognized weights: " + weights);
            }
            json j = value_report(v, "cycle-index", n);
            j["weights"] = used;
            emit(j);
        } else if (cmd_psi->parsed()) {
            permb::PsiParams p{theta1, theta2, theta3};
            permb::LogValue lv = permb::psi_log(n, p);
            json j;
            j["schema_version"] = kSchemaVersion;
            j["n"] = n;
            j["theta1"] = theta1;
            j["theta2"] = theta2;
            j["theta3"] = theta3;
            j["is_zero"] = lv.is_zero;
            if (!lv.is_zero) {
                j["log_value"] = std::stod(format_double(lv.log_magnitude));
                j["value"] = std::stod(format_double(lv.to_double()));
                j["log_asymptotic"] =
                    std::stod(format_double(permb::psi_asymptotic_log(n, p).log_magnitude));
            }
            emit(j);
        } else if (cmd_exp->parsed()) {
            permb::EnsembleSpec spec{n, count, seed, parse_dist(dist_str)};
            auto records = permb::run_scatter(spec, include_bethe, threads);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!output_path.empty()) {
                file.open(output_path);
                if (!file) throw std::runtime_error("cannot open output: " + output_path);
                out = &file;
            }
            if (format == "csv") {
                *out << permb::records_to_csv(records);
            } else {
                for (const auto& r : records) {
                    json j;
                    j["index"] = r.sample_index;
                    j["perm"] = r.perm;
                    j["bethe2"] = r.bethe2;
                    if (r.bethe) j["bethe"] = *r.bethe;
                    j["ratio2"] = r.ratio2;
                    if (r.ratio) j["ratio"] = *r.ratio;
                    if (r.error) j["error"] = *r.error;
                    *out << j.dump() << "\n";
                }
            }
            if (summary) {
                double sp = 0.0, sb = 0.0;
                for (const auto& r : records) {
                    sp += r.perm * r.perm;
                    sb += r.bethe2 * r.bethe2;
                }
                double mu1 = spec.dist.mu1(), mu2 = spec.dist.mu2();
                json j;
                j["schema_version"] = kSchemaVersion;
                j["n"] = n;
                j["count"] = count;
                j["seed"] = seed;
                j["distribution"] = spec.dist.describe();
                j["threads"] = threads;
                j["mean_perm_sq"] = sp / (double)count;
                j["mean_bethe2_sq"] = sb / (double)count;
                j["exact_perm_sq"] = permb::exact_moment_perm_sq(n, mu1, mu2);
                j["exact_bethe2_sq"] = permb::exact_moment_bethe2_sq(n, mu1, mu2);
                j["gamma_exact"] = permb::gamma_ratio(n, mu1, mu2);
                j["gamma_asymptotic"] = permb::reference_ratios(n).gamma2;
                std::cerr << j.dump(2) << "\n";
            }
        } else if (cmd_verify->parsed()) {
            permb::VerifyOptions opt;
            opt.max_n = max_n;
            opt.seed = seed;
            auto results = permb::verify_suite(opt);
            json checks = json::array();
            std::size_t failures = 0;
            for (const auto& r : results) {
                json c;
                c["name"] = r.name;
                c["n"] = r.n;
                c["lhs"] = r.lhs;
                c["rhs"] = r.rhs;
                c["rel_err"] = r.rel_err;
                c["pass"] = r.pass;
                checks.push_back(c);
                if (!r.pass) ++failures;
            }
            json j;
            j["schema_version"] = kSchemaVersion;
            j["suite"] = suite;
            j["max_n"] = max_n;
            j["seed"] = seed;
            j["checks"] = checks;
            j["total"] = results.size();
            j["failures"] = failures;
            emit(j);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        json err;
        err["schema_version"] = kSchemaVersion;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
