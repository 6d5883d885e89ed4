#include "permb/cover.hpp"

#include <stdexcept>

namespace permb {

CoverAssignment CoverAssignment::all_identity(std::size_t n, std::size_t m) {
    CoverAssignment c;
    c.n = n;
    c.m = m;
    c.blocks.assign(n * n, Permutation::identity(m));
    return c;
}

void CoverAssignment::validate() const {
    if (blocks.size() != n * n)
        throw std::invalid_argument("CoverAssignment: block count != n^2");
    for (const auto& b : blocks)
        if (b.n() != m) throw std::invalid_argument("CoverAssignment: block degree != M");
}

NonNegMatrix lift(const NonNegMatrix& a, const CoverAssignment& cover) {
    if (cover.n != a.n()) throw std::invalid_argument("lift: dimension mismatch");
    cover.validate();
    const std::size_t n = a.n(), m = cover.m;
    std::vector<double> e(n * m * n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Permutation& p = cover.block(i, j);
            // permutation matrix P with P[r][c] = 1 iff p(c) = r, scaled by a_ij
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t r = p(c);
                e[(i * m + r) * (n * m) + (j * m + c)] = a(i, j);
            }
        }
    return NonNegMatrix(n * m, std::move(e));
}

}  // namespace permb
