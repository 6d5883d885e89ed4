#include "permb/bethe_vi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace permb {

DoublyStochastic DoublyStochastic::uniform(std::size_t n) {
    DoublyStochastic g;
    g.n = n;
    g.gamma.assign(n * n, 1.0 / (double)n);
    return g;
}

bool DoublyStochastic::check_sums(double tol) const {
    for (std::size_t i = 0; i < n; ++i) {
        double rs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double v = (*this)(i, j);
            if (v < -tol || v > 1.0 + tol) return false;
            rs += v;
        }
        if (std::abs(rs - 1.0) > tol) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double cs = 0.0;
        for (std::size_t i = 0; i < n; ++i) cs += (*this)(i, j);
        if (std::abs(cs - 1.0) > tol) return false;
    }
    return true;
}

double bethe_free_energy(const NonNegMatrix& a, const DoublyStochastic& g) {
    if (a.n() != g.n) throw std::invalid_argument("bethe_free_energy: dimension mismatch");
    double f = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = 0; j < a.n(); ++j) {
            double gv = g(i, j);
            if (gv > 0.0) {
                if (a(i, j) <= 0.0)
                    throw std::domain_error("bethe_free_energy: gamma positive off support");
                f += gv * std::log(gv / a(i, j));
            }
            double r = 1.0 - gv;
            if (r > 0.0) f -= r * std::log(r);
        }
    return f;
}

namespace {

// Augmenting-path matching that must use edge (fi, fj); support entries are
// marked in supp.
bool matching_with_forced_edge(const std::vector<char>& supp, std::size_t n, std::size_t fi,
                               std::size_t fj) {
    std::vector<int> match_col(n, -1);
    std::vector<char> seen(n);
    match_col[fj] = (int)fi;
    struct Aug {
        const std::vector<char>& supp;
        std::size_t n, fi, fj;
        std::vector<int>& match_col;
        std::vector<char>& seen;
        bool go(std::size_t i) {
            if (i == fi) return false;  // fi is pinned to fj
            for (std::size_t j = 0; j < n; ++j) {
                if (j == fj || !supp[i * n + j] || seen[j]) continue;
                seen[j] = 1;
                if (match_col[j] < 0 || go((std::size_t)match_col[j])) {
                    match_col[j] = (int)i;
                    return true;
                }
            }
            return false;
        }
    };
    Aug aug{supp, n, fi, fj, match_col, seen};
    for (std::size_t i = 0; i < n; ++i) {
        if (i == fi) continue;
        seen.assign(n, 0);
        if (!aug.go(i)) return false;
    }
    return true;
}

void sinkhorn(std::vector<double>& m, const std::vector<char>& supp, std::size_t n) {
    for (std::size_t it = 0; it < 20000; ++it) {
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double rs = 0.0;
            for (std::size_t j = 0; j < n; ++j) rs += m[i * n + j];
            for (std::size_t j = 0; j < n; ++j)
                if (supp[i * n + j]) m[i * n + j] /= rs;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double cs = 0.0;
            for (std::size_t i = 0; i < n; ++i) cs += m[i * n + j];
            dev = std::max(dev, std::abs(cs - 1.0));
            for (std::size_t i = 0; i < n; ++i)
                if (supp[i * n + j]) m[i * n + j] /= cs;
        }
        if (dev < 1e-14) break;
    }
}

// Projection of the gradient onto the tangent space of the row/column sum
// constraints, restricted to the support: iterated double centering.
double stationarity_residual(const std::vector<double>& grad, const std::vector<char>& supp,
                             std::size_t n) {
    std::vector<double> g = grad;
    for (std::size_t it = 0; it < 200; ++it) {
        double shift = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            std::size_t cnt = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (supp[i * n + j]) {
                    s += g[i * n + j];
                    ++cnt;
                }
            double mean = cnt ? s / (double)cnt : 0.0;
            shift = std::max(shift, std::abs(mean));
            for (std::size_t j = 0; j < n; ++j)
                if (supp[i * n + j]) g[i * n + j] -= mean;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (supp[i * n + j]) {
                    s += g[i * n + j];
                    ++cnt;
                }
            double mean = cnt ? s / (double)cnt : 0.0;
            shift = std::max(shift, std::abs(mean));
            for (std::size_t i = 0; i < n; ++i)
                if (supp[i * n + j]) g[i * n + j] -= mean;
        }
        if (shift < 1e-15) break;
    }
    double r = 0.0;
    for (std::size_t e = 0; e < n * n; ++e)
        if (supp[e]) r = std::max(r, std::abs(g[e]));
    return r;
}

}  // namespace

BetheResult bethe_permanent(const NonNegMatrix& a, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("bethe_permanent: tol <= 0");
    const std::size_t n = a.n();
    if (!support_has_matching(a))
        throw std::domain_error("bethe_permanent: support admits no doubly stochastic matrix");

    // support = entries that can carry positive weight in some permutation;
    // everything else is pinned to zero
    std::vector<char> supp(n * n, 0);
    bool has_zero = false;
    for (std::size_t e = 0; e < n * n; ++e) {
        supp[e] = a.entries()[e] > 0.0;
        if (!supp[e]) has_zero = true;
    }
    if (has_zero) {
        std::vector<char> raw = supp;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (raw[i * n + j] && !matching_with_forced_edge(raw, n, i, j))
                    supp[i * n + j] = 0;
    }

    // init: gamma proportional to a, Sinkhorn-balanced
    std::vector<double> gamma(n * n, 0.0);
    for (std::size_t e = 0; e < n * n; ++e)
        if (supp[e]) gamma[e] = a.entries()[e];
    sinkhorn(gamma, supp, n);

    DoublyStochastic g;
    g.n = n;
    g.gamma = gamma;
    double f_cur = bethe_free_energy(a, g);

    std::vector<double> grad(n * n, 0.0), trial(n * n, 0.0);
    double eta = 1.0;
    double residual = 0.0;
    std::size_t iter = 0;
    bool converged = false;
    // The free energy is convex on the doubly stochastic polytope, so a step
    // that cannot decrease it certifies the constrained minimum even when the
    // minimizer sits on the boundary and the projected gradient stays nonzero
    // (e.g. any 2x2 matrix without a weight tie, where F is linear in gamma).
    double f_best = f_cur;
    std::size_t stall = 0;
    for (; iter < max_iter; ++iter) {
        for (std::size_t e = 0; e < n * n; ++e) {
            if (!supp[e]) continue;
            double gv = std::clamp(gamma[e], 1e-300, 1.0 - 1e-16);
            grad[e] = std::log(gv * (1.0 - gv) / a.entries()[e]) + 2.0;
        }
        residual = stationarity_residual(grad, supp, n);
        if (residual <= tol) {
            converged = true;
            break;
        }
        // mirror step gamma <- Sinkhorn(gamma * exp(-eta * grad)), with
        // backtracking on F
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t e = 0; e < n * n; ++e)
                trial[e] = supp[e] ? gamma[e] * std::exp(-eta * grad[e]) : 0.0;
            sinkhorn(trial, supp, n);
            DoublyStochastic gt;
            gt.n = n;
            gt.gamma = trial;
            double f_new = bethe_free_energy(a, gt);
            if (f_new <= f_cur + 1e-13 * std::abs(f_cur)) {
                gamma.swap(trial);
                f_cur = f_new;
                eta = std::min(eta * 1.25, 1.0);
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) {  // even tiny steps cannot decrease F
            converged = true;
            break;
        }
        if (f_cur < f_best - 1e-13 * (1.0 + std::abs(f_best))) {
            f_best = f_cur;
            stall = 0;
        } else if (++stall >= 50) {
            converged = true;
            break;
        }
    }

    BetheResult res;
    res.gamma.n = n;
    res.gamma.gamma = gamma;
    res.log_value = -f_cur;
    res.value = std::exp(-f_cur);
    res.residual = residual;
    res.iterations = iter;
    res.converged = converged;
    return res;
}

}  // namespace permb
