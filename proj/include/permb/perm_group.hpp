#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace permb {

// Element of S_n. Stored 0-based; the 1-based interface mirrors standard
// cycle notation like "(1)(2)(354)".
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> images0);  // 0-based images
    static Permutation identity(std::size_t n);
    // images given as sigma(1),...,sigma(n)
    static Permutation from_one_based(const std::vector<std::size_t>& images1);

    std::size_t n() const { return map_.size(); }
    std::size_t operator()(std::size_t i0) const { return map_[i0]; }  // 0-based
    std::size_t image_one_based(std::size_t i1) const { return map_[i1 - 1] + 1; }
    bool operator==(const Permutation& o) const { return map_ == o.map_; }

    std::string cycle_notation() const;  // 1-based, e.g. "(1)(2)(354)"

  private:
    std::vector<std::size_t> map_;
};

struct CycleType {
    // counts[l-1] = number of cycles of length l, l = 1..n
    std::vector<std::size_t> counts;
    std::size_t count(std::size_t len) const {
        return (len >= 1 && len <= counts.size()) ? counts[len - 1] : 0;
    }
};

Permutation compose(const Permutation& s1, const Permutation& s2);  // s1 after s2
Permutation inverse(const Permutation& s);
CycleType cycle_type(const Permutation& s);

// Number of cycles of length > 1.
std::size_t c_long(const Permutation& s);
// c(sigma1, sigma2): cycles of length > 1 in sigma1 o sigma2^{-1}.
std::size_t c_pair(const Permutation& s1, const Permutation& s2);

// Visits all n! permutations in lexicographic order, n <= 12.
void enumerate_all(std::size_t n, const std::function<void(const Permutation&)>& visit);

}  // namespace permb
