#pragma once

#include "permb/matrix.hpp"
#include "permb/perm_group.hpp"

namespace permb {

// One M x M permutation block per matrix entry (i,j); defines an M-cover
// lift of the base matrix. blocks are stored row-major over (i,j).
struct CoverAssignment {
    std::size_t n = 0;
    std::size_t m = 1;
    std::vector<Permutation> blocks;  // n*n blocks, each a permutation of [M]

    const Permutation& block(std::size_t i, std::size_t j) const { return blocks[i * n + j]; }

    static CoverAssignment all_identity(std::size_t n, std::size_t m);
    void validate() const;
};

// The (Mn) x (Mn) block matrix with block (i,j) = a_ij * P(i,j).
NonNegMatrix lift(const NonNegMatrix& a, const CoverAssignment& cover);

}  // namespace permb
