#pragma once

#include "permb/cover.hpp"
#include "permb/matrix.hpp"
#include "permb/perm_group.hpp"

namespace permb {

// Edge label of the transformed double-cover NFG. The (1,0) label never
// occurs in a valid configuration, so it is not representable.
enum class EdgeLabel : unsigned char {
    none = 0,  // (0,0)
    half = 1,  // (0,1)
    full = 2,  // (1,1)
};

// Labeling of all n^2 edges of the complete bipartite graph. Valid iff every
// vertex is incident to exactly one full edge or exactly two half edges.
struct ValidConfig {
    std::size_t n = 0;
    std::vector<EdgeLabel> edge_labels;  // row-major over (i,j)

    EdgeLabel label(std::size_t i, std::size_t j) const { return edge_labels[i * n + j]; }
    bool is_valid() const;
};

// Double sum over S_n x S_n, n <= 7.
double bethe2_pairsum(const NonNegMatrix& a);

// Regrouped single sum over S_n of weighted permanents, n <= 10. The default
// production evaluator.
double bethe2_grouped(const NonNegMatrix& a);

// Exhaustive average over all 2^{n^2} double covers, n <= 4.
double bethe2_cover_average(const NonNegMatrix& a);

// Partition function of the transformed NFG, enumerated over structured
// valid configurations (partial matching + disjoint alternating cycles),
// n <= 6. sqrt of this equals the degree-2 Bethe permanent.
double zhat_partition(const NonNegMatrix& a);

// The mapping h from permutation pairs to valid configurations.
ValidConfig config_from_pair(const Permutation& s1, const Permutation& s2);

// 2^k where k = number of half-label cycles in the configuration.
std::uint64_t preimage_count(const ValidConfig& x);

// Number of half-label cycles in a valid configuration.
std::size_t count_half_cycles(const ValidConfig& x);

// M-th root of the mean permanent over all (M!)^{n^2} M-covers.
double bethe_M_exhaustive(const NonNegMatrix& a, std::size_t m);

}  // namespace permb
