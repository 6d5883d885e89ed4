#pragma once

#include "permb/matrix.hpp"

namespace permb {

// Point of the doubly stochastic polytope (Birkhoff polytope).
struct DoublyStochastic {
    std::size_t n = 0;
    std::vector<double> gamma;  // row-major, entries in [0,1]

    double operator()(std::size_t i, std::size_t j) const { return gamma[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return gamma[i * n + j]; }
    bool check_sums(double tol = 1e-9) const;

    static DoublyStochastic uniform(std::size_t n);
};

struct BetheResult {
    double value = 0.0;      // exp(-min F)
    double log_value = 0.0;  // -min F
    DoublyStochastic gamma;
    double residual = 0.0;  // projected-gradient stationarity measure
    std::size_t iterations = 0;
    bool converged = false;
};

// F(gamma) = sum gamma_ij ln(gamma_ij / a_ij) - sum (1 - gamma_ij) ln(1 - gamma_ij),
// with 0 ln 0 = 0. Throws if gamma is positive where a is zero.
double bethe_free_energy(const NonNegMatrix& a, const DoublyStochastic& g);

// Minimizes F over the doubly stochastic polytope (mirror descent with a
// Sinkhorn projection) and returns exp(-min F).
BetheResult bethe_permanent(const NonNegMatrix& a, double tol = 1e-8,
                            std::size_t max_iter = 100000);

}  // namespace permb
