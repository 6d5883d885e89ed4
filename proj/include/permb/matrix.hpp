#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace permb {

// Natural-log representation of a non-negative quantity, with an explicit
// zero flag so log(0) never appears in arithmetic.
struct LogValue {
    double log_magnitude = 0.0;
    bool is_zero = false;

    static LogValue zero() { return {0.0, true}; }
    static LogValue from_linear(double v);
    static LogValue from_log(double lv) { return {lv, false}; }

    double to_double() const;
    LogValue operator*(const LogValue& o) const;
    // log-sum-exp addition of two non-negative quantities
    LogValue operator+(const LogValue& o) const;
};

// Dense square matrix with non-negative entries, row-major.
class NonNegMatrix {
  public:
    NonNegMatrix() = default;
    NonNegMatrix(std::size_t n, std::vector<double> entries);
    static NonNegMatrix ones(std::size_t n);
    static NonNegMatrix identity(std::size_t n);
    static NonNegMatrix diagonal(const std::vector<double>& d);

    std::size_t n() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

  private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

// Deterministic pairwise reduction; bit-stable independent of chunking as
// long as the element order is fixed.
double pairwise_sum(const std::vector<double>& terms);

// Sum over all permutations, n <= 12.
double permanent_naive(const NonNegMatrix& a);

// Ryser inclusion-exclusion with Gray-code subset order, n <= 30.
double permanent_ryser(const NonNegMatrix& a);

// Overflow-safe permanent; exact zero flag iff the support of the matrix
// admits no perfect matching.
LogValue log_permanent(const NonNegMatrix& a);

// True iff the bipartite graph of positive entries has a perfect matching,
// i.e. some permutation has a positive product.
bool support_has_matching(const NonNegMatrix& a);

// Parsing: CSV (n rows of comma-separated decimals) or JSON array-of-arrays.
// Rejects negatives and non-square shapes.
NonNegMatrix parse_matrix_csv(const std::string& text);
NonNegMatrix parse_matrix_json(const std::string& text);
NonNegMatrix load_matrix(const std::string& path);

}  // namespace permb
