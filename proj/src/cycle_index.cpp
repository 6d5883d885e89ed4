#include "permb/cycle_index.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace permb {

CycleIndexWeights CycleIndexWeights::all_one() {
    return {[](std::size_t) { return 1.0; }, 1};
}

CycleIndexWeights CycleIndexWeights::head_tail(double z1, double zrest) {
    return {[z1, zrest](std::size_t l) { return l == 1 ? z1 : zrest; }, 2};
}

double cycle_index(std::size_t n, const CycleIndexWeights& z) {
    if (n == 0) return 1.0;
    std::vector<double> zn(n + 1);
    zn[0] = 1.0;
    if (z.tail_start >= 1) {
        // z_l constant for l >= tail_start: tail of the convolution collapses
        // to a running prefix sum of Z
        const std::size_t l0 = z.tail_start;
        const double tail = z.weight_of(l0);
        std::vector<double> prefix(n + 1);
        prefix[0] = zn[0];
        for (std::size_t k = 1; k <= n; ++k) {
            double s = 0.0;
            for (std::size_t l = 1; l < l0 && l <= k; ++l) s += z.weight_of(l) * zn[k - l];
            if (k >= l0) s += tail * prefix[k - l0];
            zn[k] = s / (double)k;
            prefix[k] = prefix[k - 1] + zn[k];
        }
    } else {
        for (std::size_t k = 1; k <= n; ++k) {
            double s = 0.0;
            for (std::size_t l = 1; l <= k; ++l) s += z.weight_of(l) * zn[k - l];
            zn[k] = s / (double)k;
        }
    }
    return zn[n];
}

double z_all_one(std::size_t n) {
    if (n <= 1) return 1.0;
    double zm2 = 1.0, zm1 = 1.0;  // Z_0, Z_1
    for (std::size_t k = 2; k <= n; ++k) {
        double zk = zm1 - zm2 / (2.0 * (double)k);
        zm2 = zm1;
        zm1 = zk;
    }
    return zm1;
}

std::pair<double, double> z_bounds(std::size_t n) {
    if (n < 1) throw std::invalid_argument("z_bounds: n < 1");
    const double rn = std::sqrt((double)n);
    return {1.0 / (std::sqrt(2.0) * rn), 3.0 / (2.0 * std::sqrt(2.0) * rn)};
}

double bell_polynomial(std::size_t n, const std::vector<double>& x) {
    if (x.size() < n) throw std::invalid_argument("bell_polynomial: need n arguments");
    std::vector<double> b(n + 1);
    b[0] = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
        // B_{m+1} = sum_{k=0..m} C(m,k) B_{m-k} x_{k+1}
        double s = 0.0, binom = 1.0;
        for (std::size_t k = 0; k <= m; ++k) {
            s += binom * b[m - k] * x[k];
            binom = binom * (double)(m - k) / (double)(k + 1);
        }
        b[m + 1] = s;
    }
    return b[n];
}

LogValue bell_polynomial_log(std::size_t n, const std::vector<double>& x) {
    if (x.size() < n) throw std::invalid_argument("bell_polynomial_log: need n arguments");
    if (n > 400) throw std::invalid_argument("bell_polynomial_log: n > 400");
    for (double v : x)
        if (v < 0.0)
            throw std::invalid_argument("bell_polynomial_log: negative argument");
    std::vector<LogValue> b(n + 1);
    b[0] = LogValue::from_linear(1.0);
    std::vector<LogValue> lx(n);
    for (std::size_t i = 0; i < n; ++i) lx[i] = LogValue::from_linear(x[i]);
    for (std::size_t m = 0; m < n; ++m) {
        LogValue s = LogValue::zero();
        double log_binom = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            if (!b[m - k].is_zero && !lx[k].is_zero)
                s = s + LogValue::from_log(log_binom + b[m - k].log_magnitude +
                                           lx[k].log_magnitude);
            if (k < m) log_binom += std::log((double)(m - k) / (double)(k + 1));
        }
        b[m + 1] = s;
    }
    return b[n];
}

namespace {

void check_params(const PsiParams& p) {
    if (!(p.theta1 > 0.0) || !(p.theta2 > 0.0))
        throw std::domain_error("psi: theta1 and theta2 must be positive");
    if (!(p.theta3 > 0.0 && p.theta3 <= 1.0))
        throw std::domain_error("psi: theta3 must lie in (0, 1]");
}

}  // namespace

double psi(std::size_t n, const PsiParams& p) {
    check_params(p);
    if (n > 90) return psi_log(n, p).to_double();
    const double tau = p.theta1 / p.theta2 - p.theta3;
    // generalized binomials C(k + theta3 - 1, k), k = 0..n
    std::vector<double> c(n + 1);
    c[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        c[k] = c[k - 1] * ((double)k + p.theta3 - 1.0) / (double)k;
    double sum = 0.0, tpow = 1.0;  // tau^l / l!
    for (std::size_t l = 0; l <= n; ++l) {
        sum += c[n - l] * tpow;
        tpow *= tau / (double)(l + 1);
    }
    double fact = 1.0;
    for (std::size_t k = 2; k <= n; ++k) fact *= (double)k;
    return fact * fact * std::pow(p.theta2, (double)n) * sum;
}

LogValue psi_log(std::size_t n, const PsiParams& p) {
    check_params(p);
    const double tau = p.theta1 / p.theta2 - p.theta3;
    std::vector<double> logc(n + 1);
    logc[0] = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        logc[k] = logc[k - 1] + std::log(((double)k + p.theta3 - 1.0) / (double)k);
    // signed log-sum over l of C_{n-l} tau^l / l!
    const double log_abs_tau = tau == 0.0 ? 0.0 : std::log(std::abs(tau));
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> term_log(n + 1);
    std::vector<int> term_sign(n + 1);
    for (std::size_t l = 0; l <= n; ++l) {
        if (tau == 0.0 && l > 0) {
            term_sign[l] = 0;
            continue;
        }
        term_log[l] = logc[n - l] + (double)l * log_abs_tau - std::lgamma((double)l + 1.0);
        term_sign[l] = (tau < 0.0 && l % 2 == 1) ? -1 : 1;
        max_log = std::max(max_log, term_log[l]);
    }
    double acc = 0.0;
    for (std::size_t l = 0; l <= n; ++l)
        if (term_sign[l] != 0) acc += term_sign[l] * std::exp(term_log[l] - max_log);
    if (acc <= 0.0) return LogValue::zero();
    double log_sum = max_log + std::log(acc);
    return LogValue::from_log(2.0 * std::lgamma((double)n + 1.0) +
                              (double)n * std::log(p.theta2) + log_sum);
}

double psi_asymptotic(std::size_t n, const PsiParams& p) {
    return psi_asymptotic_log(n, p).to_double();
}

LogValue psi_asymptotic_log(std::size_t n, const PsiParams& p) {
    check_params(p);
    return LogValue::from_log(2.0 * std::lgamma((double)n + 1.0) +
                              (double)n * std::log(p.theta2) +
                              (p.theta3 - 1.0) * std::log((double)n) -
                              std::lgamma(p.theta3) + p.theta1 / p.theta2 - p.theta3);
}

ReferenceRatios reference_ratios(std::size_t n) {
    if (n < 1) throw std::invalid_argument("reference_ratios: n < 1");
    const double pne = M_PI * (double)n / std::exp(1.0);
    ReferenceRatios r;
    r.perm_over_bethe = std::sqrt(2.0 * pne);
    r.perm_over_bethe2 = std::pow(pne, 0.25);
    r.bethe2_over_bethe = std::sqrt(2.0) * std::pow(pne, 0.25);
    r.gamma2 = std::pow(pne, 0.25);
    return r;
}

}  // namespace permb
