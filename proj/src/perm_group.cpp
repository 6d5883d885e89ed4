#include "permb/perm_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace permb {

Permutation::Permutation(std::vector<std::size_t> images0) : map_(std::move(images0)) {
    std::vector<char> seen(map_.size(), 0);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v])
            throw std::invalid_argument("Permutation: not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& images1) {
    std::vector<std::size_t> m(images1.size());
    for (std::size_t i = 0; i < images1.size(); ++i) {
        if (images1[i] < 1) throw std::invalid_argument("Permutation: 1-based image < 1");
        m[i] = images1[i] - 1;
    }
    return Permutation(std::move(m));
}

std::string Permutation::cycle_notation() const {
    std::string out;
    std::vector<char> seen(n(), 0);
    for (std::size_t start = 0; start < n(); ++start) {
        if (seen[start]) continue;
        out += '(';
        std::size_t i = start;
        do {
            seen[i] = 1;
            out += std::to_string(i + 1);
            i = map_[i];
        } while (i != start);
        out += ')';
    }
    return out;
}

Permutation compose(const Permutation& s1, const Permutation& s2) {
    if (s1.n() != s2.n()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<std::size_t> m(s1.n());
    for (std::size_t i = 0; i < s1.n(); ++i) m[i] = s1(s2(i));
    return Permutation(std::move(m));
}

Permutation inverse(const Permutation& s) {
    std::vector<std::size_t> m(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) m[s(i)] = i;
    return Permutation(std::move(m));
}

CycleType cycle_type(const Permutation& s) {
    CycleType t;
    t.counts.assign(s.n(), 0);
    std::vector<char> seen(s.n(), 0);
    for (std::size_t start = 0; start < s.n(); ++start) {
        if (seen[start]) continue;
        std::size_t len = 0, i = start;
        do {
            seen[i] = 1;
            ++len;
            i = s(i);
        } while (i != start);
        ++t.counts[len - 1];
    }
    return t;
}

std::size_t c_long(const Permutation& s) {
    std::size_t c = 0;
    std::vector<char> seen(s.n(), 0);
    for (std::size_t start = 0; start < s.n(); ++start) {
        if (seen[start]) continue;
        std::size_t len = 0, i = start;
        do {
            seen[i] = 1;
            ++len;
            i = s(i);
        } while (i != start);
        if (len > 1) ++c;
    }
    return c;
}

std::size_t c_pair(const Permutation& s1, const Permutation& s2) {
    return c_long(compose(s1, inverse(s2)));
}

void enumerate_all(std::size_t n, const std::function<void(const Permutation&)>& visit) {
    if (n > 12) throw std::invalid_argument("enumerate_all: n > 12");
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    do {
        visit(Permutation(m));
    } while (std::next_permutation(m.begin(), m.end()));
}

}  // namespace permb
