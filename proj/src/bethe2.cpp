#include "permb/bethe2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace permb {

namespace {

double perm_weight(const NonNegMatrix& a, const std::vector<std::size_t>& sigma) {
    double w = 1.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) w *= a(i, sigma[i]);
    return w;
}

std::vector<std::vector<std::size_t>> all_perms(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    do {
        out.push_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
}

// cycles of length > 1 in s1 o s2^{-1}, allocation-free
std::size_t c_pair_fast(const std::vector<std::size_t>& s1, const std::vector<std::size_t>& s2) {
    const std::size_t n = s1.size();
    std::array<std::size_t, 16> inv2{}, q{};
    for (std::size_t i = 0; i < n; ++i) inv2[s2[i]] = i;
    for (std::size_t i = 0; i < n; ++i) q[i] = s1[inv2[i]];
    std::uint32_t seen = 0;
    std::size_t c = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen & (1u << start)) continue;
        std::size_t len = 0, i = start;
        do {
            seen |= 1u << i;
            ++len;
            i = q[i];
        } while (i != start);
        if (len > 1) ++c;
    }
    return c;
}

}  // namespace

double bethe2_pairsum(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n > 7) throw std::invalid_argument("bethe2_pairsum: n > 7");
    auto perms = all_perms(n);
    std::vector<double> w(perms.size());
    for (std::size_t k = 0; k < perms.size(); ++k) w[k] = perm_weight(a, perms[k]);
    // pairwise over sigma1 of (Kahan inner sums over sigma2)
    std::vector<double> outer(perms.size());
    for (std::size_t k1 = 0; k1 < perms.size(); ++k1) {
        double acc = 0.0, comp = 0.0;
        for (std::size_t k2 = 0; k2 < perms.size(); ++k2) {
            double term =
                w[k1] * w[k2] * std::ldexp(1.0, -(int)c_pair_fast(perms[k1], perms[k2]));
            double y = term - comp;
            double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        outer[k1] = acc;
    }
    return std::sqrt(pairwise_sum(outer));
}

double bethe2_grouped(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n > 10) throw std::invalid_argument("bethe2_grouped: n > 10");
    // substituting sigma1 = sigma o sigma2 turns the pair sum into
    // sum_sigma 2^{-c(sigma)} * perm(B) with B_ij = a_{i,sigma(j)} a_{i,j}
    std::vector<double> terms;
    std::vector<std::size_t> sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
    std::vector<double> b(n * n);
    do {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b[i * n + j] = a(i, sigma[j]) * a(i, j);
        // cycles of length > 1 of sigma itself
        std::uint32_t seen = 0;
        std::size_t clong = 0;
        for (std::size_t start = 0; start < n; ++start) {
            if (seen & (1u << start)) continue;
            std::size_t len = 0, i = start;
            do {
                seen |= 1u << i;
                ++len;
                i = sigma[i];
            } while (i != start);
            if (len > 1) ++clong;
        }
        terms.push_back(std::ldexp(permanent_ryser(NonNegMatrix(n, b)), -(int)clong));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::sqrt(pairwise_sum(terms));
}

double bethe2_cover_average(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n > 4) throw std::invalid_argument("bethe2_cover_average: n > 4");
    const std::size_t bits = n * n;
    const Permutation id2 = Permutation::identity(2);
    const Permutation swap2 = Permutation::from_one_based({2, 1});
    CoverAssignment cover = CoverAssignment::all_identity(n, 2);
    std::vector<double> terms;
    terms.reserve(std::size_t(1) << bits);
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << bits); ++s) {
        for (std::size_t e = 0; e < bits; ++e)
            cover.blocks[e] = (s >> e) & 1 ? swap2 : id2;
        terms.push_back(permanent_ryser(lift(a, cover)));
    }
    double mean = pairwise_sum(terms) / std::ldexp(1.0, (int)bits);
    return std::sqrt(mean);
}

namespace {

// Enumerates alternating cycles through left vertex i0 over the free
// vertices, one orientation each (first right index < last right index).
struct ZhatEnum {
    const NonNegMatrix& a;
    std::size_t n;

    double recurse(std::uint32_t left_used, std::uint32_t right_used);

    void cycles(std::size_t i0, std::size_t j1, std::size_t jprev, double prod,
                std::size_t len, std::uint32_t left_used, std::uint32_t right_used,
                double& total) {
        for (std::size_t i = 0; i < n; ++i) {
            if (left_used & (1u << i)) continue;
            double p1 = prod * a(i, jprev);
            if (p1 == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (right_used & (1u << j)) continue;
                double p2 = p1 * a(i, j);
                if (p2 == 0.0) continue;
                std::uint32_t lu = left_used | (1u << i);
                std::uint32_t ru = right_used | (1u << j);
                if (len + 1 >= 2 && j > j1 && a(i0, j) > 0.0)
                    total += p2 * a(i0, j) * recurse(lu, ru);
                cycles(i0, j1, j, p2, len + 1, lu, ru, total);
            }
        }
    }
};

double ZhatEnum::recurse(std::uint32_t left_used, std::uint32_t right_used) {
    std::size_t i0 = n;
    for (std::size_t i = 0; i < n; ++i)
        if (!(left_used & (1u << i))) {
            i0 = i;
            break;
        }
    if (i0 == n) return 1.0;
    double total = 0.0;
    // (1,1)-edge at i0: contributes a_ij from both endpoints
    for (std::size_t j = 0; j < n; ++j) {
        if (right_used & (1u << j)) continue;
        double w = a(i0, j) * a(i0, j);
        if (w > 0.0) total += w * recurse(left_used | (1u << i0), right_used | (1u << j));
    }
    // (0,1)-cycle through i0
    for (std::size_t j1 = 0; j1 < n; ++j1) {
        if (right_used & (1u << j1)) continue;
        double p = a(i0, j1);
        if (p == 0.0) continue;
        cycles(i0, j1, j1, p, 1, left_used | (1u << i0), right_used | (1u << j1), total);
    }
    return total;
}

}  // namespace

double zhat_partition(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n > 6) throw std::invalid_argument("zhat_partition: n > 6");
    ZhatEnum z{a, n};
    return z.recurse(0, 0);
}

ValidConfig config_from_pair(const Permutation& s1, const Permutation& s2) {
    if (s1.n() != s2.n()) throw std::invalid_argument("config_from_pair: dimension mismatch");
    const std::size_t n = s1.n();
    ValidConfig x;
    x.n = n;
    x.edge_labels.assign(n * n, EdgeLabel::none);
    for (std::size_t i = 0; i < n; ++i) {
        if (s1(i) == s2(i)) {
            x.edge_labels[i * n + s1(i)] = EdgeLabel::full;
        } else {
            x.edge_labels[i * n + s1(i)] = EdgeLabel::half;
            x.edge_labels[i * n + s2(i)] = EdgeLabel::half;
        }
    }
    return x;
}

bool ValidConfig::is_valid() const {
    if (edge_labels.size() != n * n) return false;
    auto ok = [](std::size_t full, std::size_t half) {
        return (full == 1 && half == 0) || (full == 0 && half == 2);
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t full = 0, half = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (label(i, j) == EdgeLabel::full) ++full;
            if (label(i, j) == EdgeLabel::half) ++half;
        }
        if (!ok(full, half)) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t full = 0, half = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (label(i, j) == EdgeLabel::full) ++full;
            if (label(i, j) == EdgeLabel::half) ++half;
        }
        if (!ok(full, half)) return false;
    }
    return true;
}

std::size_t count_half_cycles(const ValidConfig& x) {
    const std::size_t n = x.n;
    // vertices 0..n-1 left, n..2n-1 right; half edges form disjoint cycles
    std::vector<char> seen_edge(n * n, 0);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (x.label(i, j) != EdgeLabel::half || seen_edge[i * n + j]) continue;
            ++cycles;
            // walk the cycle, marking its edges
            std::size_t ci = i, cj = j;
            bool at_right = true;  // just arrived at right vertex cj via (ci,cj)
            seen_edge[ci * n + cj] = 1;
            while (true) {
                if (at_right) {
                    // find the other half edge at right vertex cj
                    std::size_t next = n;
                    for (std::size_t ii = 0; ii < n; ++ii)
                        if (x.label(ii, cj) == EdgeLabel::half && !seen_edge[ii * n + cj]) {
                            next = ii;
                            break;
                        }
                    if (next == n) break;  // cycle closed
                    ci = next;
                    seen_edge[ci * n + cj] = 1;
                    at_right = false;
                } else {
                    std::size_t next = n;
                    for (std::size_t jj = 0; jj < n; ++jj)
                        if (x.label(ci, jj) == EdgeLabel::half && !seen_edge[ci * n + jj]) {
                            next = jj;
                            break;
                        }
                    if (next == n) break;
                    cj = next;
                    seen_edge[ci * n + cj] = 1;
                    at_right = true;
                }
            }
        }
    return cycles;
}

std::uint64_t preimage_count(const ValidConfig& x) {
    if (!x.is_valid()) throw std::invalid_argument("preimage_count: invalid configuration");
    return std::uint64_t(1) << count_half_cycles(x);
}

double bethe_M_exhaustive(const NonNegMatrix& a, std::size_t m) {
    const std::size_t n = a.n();
    if (m < 1) throw std::invalid_argument("bethe_M_exhaustive: M < 1");
    auto block_perms = all_perms(m);
    const std::size_t base = block_perms.size();  // M!
    double total_covers = std::pow((double)base, (double)(n * n));
    if (total_covers > 1e7) throw std::invalid_argument("bethe_M_exhaustive: budget exceeded");
    if (m == 1) return permanent_ryser(a);

    std::vector<Permutation> block_objs;
    block_objs.reserve(base);
    for (const auto& p : block_perms) block_objs.emplace_back(p);

    std::vector<std::size_t> digits(n * n, 0);
    CoverAssignment cover;
    cover.n = n;
    cover.m = m;
    cover.blocks.assign(n * n, block_objs[0]);
    double acc = 0.0, comp = 0.0;
    std::uint64_t count = (std::uint64_t)std::llround(total_covers);
    for (std::uint64_t s = 0; s < count; ++s) {
        double term = permanent_ryser(lift(a, cover));
        double y = term - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        // odometer increment
        for (std::size_t e = 0; e < n * n; ++e) {
            if (++digits[e] < base) {
                cover.blocks[e] = block_objs[digits[e]];
                break;
            }
            digits[e] = 0;
            cover.blocks[e] = block_objs[0];
        }
    }
    return std::pow(acc / (double)count, 1.0 / (double)m);
}

}  // namespace permb
