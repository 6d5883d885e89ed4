#include "permb/experiments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permb/bethe2.hpp"
#include "permb/bethe_vi.hpp"
#include "permb/cycle_index.hpp"

namespace permb {

Distribution Distribution::uniform(double a, double b) {
    if (!(0.0 <= a && a < b)) throw std::invalid_argument("uniform: need 0 <= a < b");
    return {DistKind::uniform, a, b, 0.0};
}

Distribution Distribution::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate <= 0");
    return {DistKind::exponential, rate, 0.0, 0.0};
}

Distribution Distribution::constant(double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("constant: negative value");
    return {DistKind::constant, c, 0.0, 0.0};
}

Distribution Distribution::two_point(double p, double v0, double v1) {
    if (!(p >= 0.0 && p <= 1.0) || v0 < 0.0 || v1 < 0.0)
        throw std::invalid_argument("two_point: invalid parameters");
    return {DistKind::two_point, p, v0, v1};
}

double Distribution::mu1() const {
    switch (kind) {
        case DistKind::uniform: return 0.5 * (p1 + p2);
        case DistKind::exponential: return 1.0 / p1;
        case DistKind::constant: return p1;
        case DistKind::two_point: return p1 * p3 + (1.0 - p1) * p2;
    }
    return 0.0;
}

double Distribution::mu2() const {
    switch (kind) {
        case DistKind::uniform: return (p1 * p1 + p1 * p2 + p2 * p2) / 3.0;
        case DistKind::exponential: return 2.0 / (p1 * p1);
        case DistKind::constant: return p1 * p1;
        case DistKind::two_point: return p1 * p3 * p3 + (1.0 - p1) * p2 * p2;
    }
    return 0.0;
}

double Distribution::sample(double u) const {
    switch (kind) {
        case DistKind::uniform: return p1 + (p2 - p1) * u;
        case DistKind::exponential: return -std::log1p(-u) / p1;
        case DistKind::constant: return p1;
        case DistKind::two_point: return u < p1 ? p3 : p2;
    }
    return 0.0;
}

std::string Distribution::describe() const {
    std::ostringstream os;
    switch (kind) {
        case DistKind::uniform: os << "uniform(" << p1 << "," << p2 << ")"; break;
        case DistKind::exponential: os << "exponential(" << p1 << ")"; break;
        case DistKind::constant: os << "constant(" << p1 << ")"; break;
        case DistKind::two_point:
            os << "two-point(" << p1 << "," << p2 << "," << p3 << ")";
            break;
    }
    return os.str();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double entry_u01(std::uint64_t seed, std::uint64_t index, std::uint64_t i, std::uint64_t j) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ i);
    h = splitmix64(h ^ j);
    return (double)(h >> 11) * 0x1.0p-53;
}

}  // namespace

NonNegMatrix sample_matrix(const EnsembleSpec& spec, std::size_t index) {
    if (index >= spec.count) throw std::invalid_argument("sample_matrix: index out of range");
    std::vector<double> e(spec.n * spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j)
            e[i * spec.n + j] = spec.dist.sample(entry_u01(spec.seed, index, i, j));
    return NonNegMatrix(spec.n, std::move(e));
}

namespace {

void check_moments(double mu1, double mu2) {
    if (!(mu1 >= 0.0) || mu2 < mu1 * mu1)
        throw std::invalid_argument("moments: need mu2 >= mu1^2 >= 0");
}

}  // namespace

double exact_moment_perm_sq(std::size_t n, double mu1, double mu2) {
    check_moments(mu1, mu2);
    return psi(n, {mu2, mu1 * mu1, 1.0});
}

LogValue exact_moment_perm_sq_log(std::size_t n, double mu1, double mu2) {
    check_moments(mu1, mu2);
    return psi_log(n, {mu2, mu1 * mu1, 1.0});
}

double exact_moment_bethe2_sq(std::size_t n, double mu1, double mu2) {
    check_moments(mu1, mu2);
    return psi(n, {mu2, mu1 * mu1, 0.5});
}

LogValue exact_moment_bethe2_sq_log(std::size_t n, double mu1, double mu2) {
    check_moments(mu1, mu2);
    return psi_log(n, {mu2, mu1 * mu1, 0.5});
}

double gamma_ratio(std::size_t n, double mu1, double mu2) {
    LogValue num = exact_moment_perm_sq_log(n, mu1, mu2);
    LogValue den = exact_moment_bethe2_sq_log(n, mu1, mu2);
    if (num.is_zero || den.is_zero)
        throw std::domain_error("gamma_ratio: degenerate moments");
    return std::exp(0.5 * (num.log_magnitude - den.log_magnitude));
}

std::vector<ExperimentRecord> run_scatter(const EnsembleSpec& spec, bool include_bethe,
                                          std::size_t threads) {
    if (spec.n > 7) throw std::invalid_argument("run_scatter: n > 7");
    if (spec.count > 1000000) throw std::invalid_argument("run_scatter: count > 1e6");
    std::vector<ExperimentRecord> records(spec.count);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            ExperimentRecord& r = records[k];
            r.sample_index = k;
            try {
                NonNegMatrix a = sample_matrix(spec, k);
                r.perm = permanent_ryser(a);
                r.bethe2 = bethe2_grouped(a);
                r.ratio2 = r.bethe2 > 0.0 ? r.perm / r.bethe2 : 0.0;
                if (include_bethe) {
                    BetheResult b = bethe_permanent(a);
                    r.bethe = b.value;
                    if (b.value > 0.0) r.ratio = r.perm / b.value;
                }
            } catch (const std::exception& ex) {
                r.error = ex.what();
            }
        }
    };
    if (threads <= 1) {
        work(0, spec.count);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (spec.count + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            std::size_t b = t * chunk, e = std::min(spec.count, b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream os;
    os.precision(17);
    os << "index,perm,bethe2,bethe,ratio2,ratio\n";
    for (const auto& r : records) {
        os << r.sample_index << ',' << r.perm << ',' << r.bethe2 << ',';
        if (r.bethe) os << *r.bethe;
        os << ',' << r.ratio2 << ',';
        if (r.ratio) os << *r.ratio;
        os << '\n';
    }
    return os.str();
}

}  // namespace permb
