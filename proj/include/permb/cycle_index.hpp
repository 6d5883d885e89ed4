#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "permb/matrix.hpp"

namespace permb {

// Indeterminate weights z_l specializing the cycle index of S_n. The rule is
// total on l >= 1. When the weights are constant from tail_start on, the
// recursion runs in O(n) via prefix sums instead of O(n^2).
struct CycleIndexWeights {
    std::function<double(std::size_t)> weight_of;
    std::size_t tail_start = 0;  // 0 = no constant tail declared

    static CycleIndexWeights all_one();
    // z_1 = z1, z_l = zrest for l >= 2
    static CycleIndexWeights head_tail(double z1, double zrest);
};

// Z(S_n) = (1/n) sum_l z_l Z(S_{n-l}), Z(S_0) = 1.
double cycle_index(std::size_t n, const CycleIndexWeights& z);

// Z_n at z_1 = 1, z_{l>=2} = 1/2, via Z_n = Z_{n-1} - Z_{n-2}/(2n).
double z_all_one(std::size_t n);

// (C_l/sqrt(n), C_u/sqrt(n)) with C_l = 1/sqrt(2), C_u = 3/(2 sqrt 2).
std::pair<double, double> z_bounds(std::size_t n);

// Complete exponential Bell polynomial B_n(x_1..x_n) via
// B_{m+1} = sum_k C(m,k) B_{m-k} x_{k+1}.
double bell_polynomial(std::size_t n, const std::vector<double>& x);

// Log-domain variant for large n; requires all x_i >= 0.
LogValue bell_polynomial_log(std::size_t n, const std::vector<double>& x);

struct PsiParams {
    double theta1 = 1.0;  // > 0
    double theta2 = 1.0;  // > 0
    double theta3 = 1.0;  // in (0, 1]
};

// Psi_n(t1,t2,t3) = (n!)^2 t2^n sum_l C(n-l+t3-1, n-l) tau^l / l!,
// tau = t1/t2 - t3, generalized binomial coefficients.
double psi(std::size_t n, const PsiParams& p);
LogValue psi_log(std::size_t n, const PsiParams& p);

// (n!)^2 t2^n n^{t3-1} / Gamma(t3) * exp(t1/t2 - t3)
double psi_asymptotic(std::size_t n, const PsiParams& p);
LogValue psi_asymptotic_log(std::size_t n, const PsiParams& p);

struct ReferenceRatios {
    double perm_over_bethe;    // sqrt(2 pi n / e)
    double perm_over_bethe2;   // (pi n / e)^{1/4}
    double bethe2_over_bethe;  // sqrt 2 * (pi n / e)^{1/4}
    double gamma2;             // (pi n / e)^{1/4}
};

ReferenceRatios reference_ratios(std::size_t n);

}  // namespace permb
