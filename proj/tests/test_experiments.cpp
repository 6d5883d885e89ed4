#include <doctest.h>

#include <cmath>

#include "permb/bethe2.hpp"
#include "permb/cycle_index.hpp"
#include "permb/experiments.hpp"
#include "permb/perm_group.hpp"

using namespace permb;

namespace {

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= (double)k;
    return f;
}

// n! sum_sigma mu2^{c_1} prod_{l>=2} mu1^{2 l c_l} (* 2^{-c} when bethe2)
double brute_moment(std::size_t n, double mu1, double mu2, bool bethe2) {
    double sum = 0.0;
    enumerate_all(n, [&](const Permutation& s) {
        CycleType t = cycle_type(s);
        double w = std::pow(mu2, (double)t.count(1));
        for (std::size_t l = 2; l <= n; ++l) {
            w *= std::pow(mu1 * mu1, (double)(l * t.count(l)));
            if (bethe2) w *= std::ldexp(1.0, -(int)t.count(l));
        }
        sum += w;
    });
    return factorial(n) * sum;
}

}  // namespace

TEST_CASE("distribution moments") {
    Distribution u = Distribution::uniform(0.0, 1.0);
    CHECK(u.mu1() == doctest::Approx(0.5));
    CHECK(u.mu2() == doctest::Approx(1.0 / 3.0));

    Distribution e = Distribution::exponential(2.0);
    CHECK(e.mu1() == doctest::Approx(0.5));
    CHECK(e.mu2() == doctest::Approx(0.5));

    Distribution c = Distribution::constant(3.0);
    CHECK(c.mu1() == 3.0);
    CHECK(c.mu2() == 9.0);

    Distribution t = Distribution::two_point(0.25, 1.0, 2.0);
    CHECK(t.mu1() == doctest::Approx(0.25 * 2.0 + 0.75 * 1.0));
    CHECK(t.mu2() == doctest::Approx(0.25 * 4.0 + 0.75 * 1.0));
}

TEST_CASE("sample_matrix determinism and constant ensemble") {
    EnsembleSpec spec{4, 10, 99, Distribution::constant(1.0)};
    for (std::size_t k = 0; k < 3; ++k) {
        NonNegMatrix a = sample_matrix(spec, k);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(a(i, j) == 1.0);
    }

    EnsembleSpec u{5, 10, 1234, Distribution::uniform(0.0, 1.0)};
    NonNegMatrix a1 = sample_matrix(u, 3), a2 = sample_matrix(u, 3);
    CHECK(a1.entries() == a2.entries());
    NonNegMatrix a3 = sample_matrix(u, 4);
    CHECK(a1.entries() != a3.entries());
    CHECK_THROWS(sample_matrix(u, 10));
}

TEST_CASE("sample_matrix empirical mean within 3 sigma") {
    EnsembleSpec spec{5, 1000, 2024, Distribution::uniform(0.0, 1.0)};
    double sum = 0.0;
    for (std::size_t k = 0; k < spec.count; ++k) {
        NonNegMatrix a = sample_matrix(spec, k);
        for (double v : a.entries()) sum += v;
    }
    double mean = sum / (25.0 * 1000.0);
    double se = std::sqrt(1.0 / 12.0) / std::sqrt(25000.0);
    CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("exact moments: closed forms and brute force") {
    CHECK(exact_moment_perm_sq(2, 0.5, 1.0 / 3.0) ==
          doctest::Approx(25.0 / 72.0).epsilon(1e-14));
    CHECK(exact_moment_bethe2_sq(2, 0.5, 1.0 / 3.0) ==
          doctest::Approx(41.0 / 144.0).epsilon(1e-14));

    for (std::size_t n : {3ul, 5ul}) {
        double f = factorial(n);
        CHECK(exact_moment_perm_sq(n, 1.0, 1.0) == doctest::Approx(f * f).epsilon(1e-12));
        CHECK(exact_moment_bethe2_sq(n, 1.0, 1.0) ==
              doctest::Approx(f * f * z_all_one(n)).epsilon(1e-12));
    }

    for (std::size_t n = 2; n <= 7; ++n)
        for (auto [mu1, mu2] :
             {std::pair{0.5, 1.0 / 3.0}, std::pair{1.0, 2.0}, std::pair{0.75, 0.8}}) {
            CHECK(exact_moment_perm_sq(n, mu1, mu2) ==
                  doctest::Approx(brute_moment(n, mu1, mu2, false)).epsilon(1e-9));
            CHECK(exact_moment_bethe2_sq(n, mu1, mu2) ==
                  doctest::Approx(brute_moment(n, mu1, mu2, true)).epsilon(1e-9));
        }

    CHECK_THROWS(exact_moment_perm_sq(3, 1.0, 0.5));  // mu2 < mu1^2
}

TEST_CASE("gamma_ratio") {
    // constant ensemble: gamma = 1 / sqrt(Z_n)
    for (std::size_t n : {2ul, 4ul, 6ul})
        CHECK(gamma_ratio(n, 1.0, 1.0) ==
              doctest::Approx(1.0 / std::sqrt(z_all_one(n))).epsilon(1e-10));

    // both distributions within 25% of (5 pi / e)^{1/4} at n = 5
    double ref = reference_ratios(5).gamma2;
    for (auto [mu1, mu2] : {std::pair{0.5, 1.0 / 3.0}, std::pair{1.0, 2.0}}) {
        double g = gamma_ratio(5, mu1, mu2);
        CHECK(std::abs(g - ref) / ref < 0.25);
    }

    // scale invariance: depends on moments only through mu2 / mu1^2
    CHECK(gamma_ratio(6, 0.5, 1.0 / 3.0) ==
          doctest::Approx(gamma_ratio(6, 1.5, 3.0)).epsilon(1e-10));

    // convergence at n = 1000, log-domain evaluation
    CHECK(gamma_ratio(1000, 0.5, 1.0 / 3.0) / reference_ratios(1000).gamma2 ==
          doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("run_scatter determinism and constant ensemble") {
    EnsembleSpec spec{5, 3, 7, Distribution::constant(1.0)};
    auto records = run_scatter(spec, false);
    REQUIRE(records.size() == 3);
    double expected_ratio = 1.0 / std::sqrt(z_all_one(5));
    for (const auto& r : records) {
        CHECK(!r.error.has_value());
        CHECK(r.perm == doctest::Approx(120.0).epsilon(1e-10));
        CHECK(r.ratio2 == doctest::Approx(expected_ratio).epsilon(1e-9));
    }

    EnsembleSpec u{4, 50, 31337, Distribution::uniform(0.0, 1.0)};
    std::string csv1 = records_to_csv(run_scatter(u, false, 1));
    std::string csv2 = records_to_csv(run_scatter(u, false, 1));
    std::string csv4 = records_to_csv(run_scatter(u, false, 4));
    CHECK(csv1 == csv2);
    CHECK(csv1 == csv4);
    CHECK(csv1.substr(0, csv1.find('\n')) == "index,perm,bethe2,bethe,ratio2,ratio");
}

TEST_CASE("run_scatter with bethe column") {
    EnsembleSpec spec{3, 4, 55, Distribution::uniform(0.1, 1.0)};
    auto records = run_scatter(spec, true);
    for (const auto& r : records) {
        REQUIRE(r.bethe.has_value());
        CHECK(*r.bethe <= r.perm * (1.0 + 1e-6));
        CHECK(*r.ratio == doctest::Approx(r.perm / *r.bethe).epsilon(1e-12));
    }
}

TEST_CASE("scatter sample mean against the exact moment") {
    EnsembleSpec spec{5, 1000, 424242, Distribution::uniform(0.0, 1.0)};
    auto records = run_scatter(spec, false);
    double mean_sq = 0.0, mean_4 = 0.0;
    for (const auto& r : records) {
        mean_sq += r.perm * r.perm;
        mean_4 += std::pow(r.perm, 4.0);
    }
    mean_sq /= 1000.0;
    mean_4 /= 1000.0;
    double exact = exact_moment_perm_sq(5, 0.5, 1.0 / 3.0);
    double se = std::sqrt((mean_4 - mean_sq * mean_sq) / 1000.0);
    CHECK(std::abs(mean_sq - exact) < 3.0 * se);
}
