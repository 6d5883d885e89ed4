#include <doctest.h>

#include <cmath>

#include "permb/cycle_index.hpp"
#include "permb/perm_group.hpp"

using namespace permb;

namespace {

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= (double)k;
    return f;
}

// brute-force (1/n!) sum over S_n of prod_l z_l^{c_l}
double cycle_index_bruteforce(std::size_t n, const std::function<double(std::size_t)>& z) {
    double sum = 0.0;
    enumerate_all(n, [&](const Permutation& s) {
        CycleType t = cycle_type(s);
        double w = 1.0;
        for (std::size_t l = 1; l <= n; ++l)
            w *= std::pow(z(l), (double)t.count(l));
        sum += w;
    });
    return sum / factorial(n);
}

}  // namespace

TEST_CASE("cycle_index examples") {
    for (std::size_t n : {0ul, 1ul, 5ul, 40ul})
        CHECK(cycle_index(n, CycleIndexWeights::all_one()) == doctest::Approx(1.0).epsilon(1e-13));

    CHECK(cycle_index(2, CycleIndexWeights::head_tail(1.0, 0.5)) ==
          doctest::Approx(0.75).epsilon(1e-14));

    double brute = 0.0;
    enumerate_all(8, [&](const Permutation& s) { brute += std::ldexp(1.0, -(int)c_long(s)); });
    brute /= factorial(8);
    CHECK(cycle_index(8, CycleIndexWeights::head_tail(1.0, 0.5)) ==
          doctest::Approx(brute).epsilon(1e-13));
}

TEST_CASE("cycle_index equals brute force for arbitrary weight rules") {
    auto rules = {
        std::function<double(std::size_t)>([](std::size_t l) { return 1.0 / (double)l; }),
        std::function<double(std::size_t)>([](std::size_t l) { return l == 2 ? 3.0 : 0.7; }),
    };
    for (const auto& rule : rules)
        for (std::size_t n = 1; n <= 7; ++n) {
            CycleIndexWeights w{rule, 0};
            CHECK(cycle_index(n, w) ==
                  doctest::Approx(cycle_index_bruteforce(n, rule)).epsilon(1e-12));
        }
}

TEST_CASE("z_all_one base values and recursion") {
    CHECK(z_all_one(0) == 1.0);
    CHECK(z_all_one(1) == 1.0);
    CHECK(z_all_one(2) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(z_all_one(3) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
    CHECK(z_all_one(4) == doctest::Approx(47.0 / 96.0).epsilon(1e-15));
}

TEST_CASE("two-recursion agreement up to n = 1e4") {
    CycleIndexWeights w = CycleIndexWeights::head_tail(1.0, 0.5);
    for (std::size_t n : {1ul, 2ul, 10ul, 100ul, 1000ul, 10000ul})
        CHECK(z_all_one(n) == doctest::Approx(cycle_index(n, w)).epsilon(1e-12));
}

TEST_CASE("bounds bracket Z_n on [1, 250]") {
    for (std::size_t n = 1; n <= 250; ++n) {
        auto [lo, hi] = z_bounds(n);
        double zn = z_all_one(n);
        // the n = 2 upper bound is an equality (3/4), so allow rounding slack
        CHECK(lo <= zn * (1.0 + 1e-12));
        CHECK(zn <= hi * (1.0 + 1e-12));
    }
    auto [lo1, hi1] = z_bounds(1);
    CHECK(lo1 == doctest::Approx(0.7071067811865475).epsilon(1e-15));
    CHECK(hi1 == doctest::Approx(1.0606601717798212).epsilon(1e-15));
}

TEST_CASE("sqrt(e/pi) convergence") {
    double target = std::sqrt(std::exp(1.0) / M_PI);
    double prev = 1e9;
    for (std::size_t n : {100ul, 1000ul, 10000ul, 100000ul}) {
        double dev = std::abs(z_all_one(n) * std::sqrt((double)n) - target);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev / target < 0.01);
}

TEST_CASE("bell_polynomial examples") {
    CHECK(bell_polynomial(1, {2.5}) == 2.5);
    // Bell numbers at x = (1,...,1), against set-partition brute force:
    // B(0..6) = 1,1,2,5,15,52,203
    std::vector<double> ones(10, 1.0);
    std::vector<double> bell{1, 1, 2, 5, 15, 52, 203};
    for (std::size_t n = 0; n < bell.size(); ++n)
        CHECK(bell_polynomial(n, ones) == doctest::Approx(bell[n]).epsilon(1e-12));

    // n! Z_n = B_n(0! * 1, 1! * 1/2, ..., (n-1)! * 1/2)
    for (std::size_t n = 1; n <= 10; ++n) {
        std::vector<double> x(n);
        double f = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = f * (k == 0 ? 1.0 : 0.5);
            f *= (double)(k + 1);
        }
        double fact = 1.0;
        for (std::size_t k = 2; k <= n; ++k) fact *= (double)k;
        CHECK(bell_polynomial(n, x) == doctest::Approx(fact * z_all_one(n)).epsilon(1e-12));
        LogValue lv = bell_polynomial_log(n, x);
        CHECK(lv.log_magnitude ==
              doctest::Approx(std::log(fact * z_all_one(n))).epsilon(1e-12));
    }
}

TEST_CASE("n! Z_4 equals the Bell value 11.75") {
    std::vector<double> x{1.0, 0.5, 1.0, 3.0};  // (k-1)! * (1 or 1/2)
    CHECK(bell_polynomial(4, x) == doctest::Approx(11.75).epsilon(1e-13));
}

TEST_CASE("psi examples") {
    for (std::size_t n : {1ul, 3ul, 7ul}) {
        double f = factorial(n);
        CHECK(psi(n, {1.0, 1.0, 1.0}) == f * f);
    }
    CHECK(psi(2, {1.0, 1.0, 0.5}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(psi(2, {1.0 / 3.0, 0.25, 1.0}) == doctest::Approx(25.0 / 72.0).epsilon(1e-14));
    CHECK_THROWS(psi(3, {1.0, 1.0, 1.5}));
    CHECK_THROWS(psi(3, {-1.0, 1.0, 0.5}));
}

TEST_CASE("psi equals its Bell-polynomial form") {
    for (std::size_t n = 1; n <= 30; ++n)
        for (double t3 : {0.25, 0.5, 1.0})
            for (auto [t1, t2] : {std::pair{1.0, 1.0}, std::pair{1.0 / 3.0, 0.25},
                                  std::pair{2.0, 0.7}}) {
                std::vector<double> x(n);
                double f = 1.0;
                for (std::size_t k = 0; k < n; ++k) {
                    // x_{k+1} = k! * (theta1 if k = 0 else theta3 theta2^{k+1})
                    x[k] = f * (k == 0 ? t1 : t3 * std::pow(t2, (double)(k + 1)));
                    f *= (double)(k + 1);
                }
                double lhs = psi(n, {t1, t2, t3});
                double rhs = factorial(n) * bell_polynomial(n, x);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            }
}

TEST_CASE("psi matches log-domain path") {
    PsiParams p{1.0 / 3.0, 0.25, 0.5};
    for (std::size_t n : {5ul, 20ul, 60ul}) {
        double direct = psi(n, p);
        CHECK(std::exp(psi_log(n, p).log_magnitude) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("psi_asymptotic") {
    // theta = (1,1,1): asymptote is exact for all n
    for (std::size_t n : {1ul, 4ul, 9ul})
        CHECK(psi_asymptotic(n, {1.0, 1.0, 1.0}) ==
              doctest::Approx(factorial(n) * factorial(n)).epsilon(1e-12));

    // theta = (1,1,1/2): Psi_n = (n!)^2 Z_n, asymptote (n!)^2 sqrt(e/(pi n))
    {
        std::size_t n = 10000;
        double log_psi = 2.0 * std::lgamma((double)n + 1.0) + std::log(z_all_one(n));
        double log_asym = psi_asymptotic_log(n, {1.0, 1.0, 0.5}).log_magnitude;
        CHECK(std::exp(log_psi - log_asym) == doctest::Approx(1.0).epsilon(0.01));
    }

    // theta = (1/3, 1/4, 1/2) at n = 200, within 2%
    {
        PsiParams p{1.0 / 3.0, 0.25, 0.5};
        double r = std::exp(psi_log(200, p).log_magnitude -
                            psi_asymptotic_log(200, p).log_magnitude);
        CHECK(r == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("reference_ratios") {
    ReferenceRatios r5 = reference_ratios(5);
    CHECK(r5.gamma2 == doctest::Approx(std::pow(5.0 * M_PI / std::exp(1.0), 0.25)).epsilon(1e-15));
    CHECK(r5.gamma2 == doctest::Approx(1.5506).epsilon(1e-4));
    for (std::size_t n : {1ul, 7ul, 100ul}) {
        ReferenceRatios r = reference_ratios(n);
        CHECK(r.bethe2_over_bethe ==
              doctest::Approx(std::sqrt(2.0) * r.perm_over_bethe2).epsilon(1e-14));
        CHECK(r.perm_over_bethe ==
              doctest::Approx(std::sqrt(2.0) * r.perm_over_bethe2 * r.perm_over_bethe2)
                  .epsilon(1e-14));
        CHECK(r.gamma2 == r.perm_over_bethe2);
    }
}
