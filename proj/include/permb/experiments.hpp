#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permb/matrix.hpp"

namespace permb {

enum class DistKind { uniform, exponential, constant, two_point };

// Entry distribution with closed-form first/second moments.
struct Distribution {
    DistKind kind = DistKind::uniform;
    double p1 = 0.0, p2 = 1.0, p3 = 0.0;  // meaning depends on kind

    static Distribution uniform(double a, double b);
    static Distribution exponential(double rate);
    static Distribution constant(double c);
    // value v1 with probability p, v0 otherwise
    static Distribution two_point(double p, double v0, double v1);

    double mu1() const;
    double mu2() const;
    double sample(double u01) const;  // inverse-CDF transform of u in [0,1)
    std::string describe() const;
};

struct EnsembleSpec {
    std::size_t n = 0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    Distribution dist;
};

struct ExperimentRecord {
    std::size_t sample_index = 0;
    double perm = 0.0;
    double bethe2 = 0.0;
    std::optional<double> bethe;
    double ratio2 = 0.0;
    std::optional<double> ratio;
    std::optional<std::string> error;
};

// Deterministic function of (seed, index): entries come from a counter-based
// generator keyed by (seed, index, i, j).
NonNegMatrix sample_matrix(const EnsembleSpec& spec, std::size_t index);

// E[perm(A)^2] = Psi_n(mu2, mu1^2, 1)
double exact_moment_perm_sq(std::size_t n, double mu1, double mu2);
LogValue exact_moment_perm_sq_log(std::size_t n, double mu1, double mu2);

// E[perm_{Bethe,2}(A)^2] = Psi_n(mu2, mu1^2, 1/2)
double exact_moment_bethe2_sq(std::size_t n, double mu1, double mu2);
LogValue exact_moment_bethe2_sq_log(std::size_t n, double mu1, double mu2);

// sqrt(E[perm^2] / E[perm_{Bethe,2}^2]), evaluated in the log domain.
double gamma_ratio(std::size_t n, double mu1, double mu2);

// One record per sample; per-sample evaluator failures land in the record.
std::vector<ExperimentRecord> run_scatter(const EnsembleSpec& spec, bool include_bethe,
                                          std::size_t threads = 1);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);

}  // namespace permb
