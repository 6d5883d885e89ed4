#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>

#include "permb/perm_group.hpp"

using namespace permb;

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    std::shuffle(m.begin(), m.end(), rng);
    return Permutation(std::move(m));
}

}  // namespace

TEST_CASE("compose and inverse laws") {
    Permutation id = Permutation::identity(5);
    Permutation s = Permutation::from_one_based({2, 3, 1, 5, 4});
    CHECK(compose(id, s) == s);
    CHECK(compose(s, inverse(s)) == id);

    Permutation t = Permutation::from_one_based({2, 1});
    CHECK(inverse(t) == t);

    Permutation c3 = Permutation::from_one_based({2, 3, 1});  // (1 2 3)
    CHECK(inverse(c3) == Permutation::from_one_based({3, 1, 2}));
    CHECK(compose(c3, inverse(c3)) == Permutation::identity(3));
}

TEST_CASE("worked 5-element pair gives (1)(2)(354)") {
    Permutation s1 = Permutation::from_one_based({1, 3, 2, 5, 4});
    Permutation s2 = Permutation::from_one_based({1, 4, 2, 3, 5});
    Permutation q = compose(s1, inverse(s2));
    CHECK(q.image_one_based(1) == 1);
    CHECK(q.image_one_based(2) == 2);
    CHECK(q.image_one_based(3) == 5);
    CHECK(q.image_one_based(4) == 3);
    CHECK(q.image_one_based(5) == 4);
    CHECK(q.cycle_notation() == "(1)(2)(354)");

    CycleType t = cycle_type(q);
    CHECK(t.count(1) == 2);
    CHECK(t.count(3) == 1);
    CHECK(t.count(2) == 0);
    CHECK(c_long(q) == 1);
    CHECK(c_pair(s1, s2) == 1);
}

TEST_CASE("cycle_type examples") {
    CycleType id5 = cycle_type(Permutation::identity(5));
    CHECK(id5.count(1) == 5);
    for (std::size_t l = 2; l <= 5; ++l) CHECK(id5.count(l) == 0);

    CycleType cyc = cycle_type(Permutation::from_one_based({2, 3, 4, 5, 1}));
    CHECK(cyc.count(5) == 1);
}

TEST_CASE("c_long examples") {
    CHECK(c_long(Permutation::identity(4)) == 0);
    CHECK(c_long(Permutation::from_one_based({2, 1, 4, 3})) == 2);
    CHECK(c_pair(Permutation::identity(2), Permutation::from_one_based({2, 1})) == 1);
    Permutation s = Permutation::from_one_based({3, 1, 2});
    CHECK(c_pair(s, s) == 0);
}

TEST_CASE("enumerate_all counts and census") {
    std::size_t count1 = 0;
    enumerate_all(1, [&](const Permutation&) { ++count1; });
    CHECK(count1 == 1);

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> census;  // (c1,c3) at n=3
    std::size_t count3 = 0;
    enumerate_all(3, [&](const Permutation& s) {
        ++count3;
        CycleType t = cycle_type(s);
        std::size_t total = 0;
        for (std::size_t l = 1; l <= 3; ++l) total += l * t.count(l);
        CHECK(total == 3);
        ++census[{t.count(1), t.count(3)}];
    });
    CHECK(count3 == 6);
    CHECK(census[{3, 0}] == 1);  // identity
    CHECK(census[{1, 0}] == 3);  // transpositions
    CHECK(census[{0, 1}] == 2);  // 3-cycles

    std::size_t count5 = 0;
    enumerate_all(5, [&](const Permutation&) { ++count5; });
    CHECK(count5 == 120);

    CHECK_THROWS(enumerate_all(13, [](const Permutation&) {}));
}

TEST_CASE("c_pair symmetry and left-translation invariance") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t n = 2 + rep % 6;
        Permutation s1 = random_perm(n, rng), s2 = random_perm(n, rng),
                    rho = random_perm(n, rng);
        CHECK(c_pair(s1, s2) == c_pair(s2, s1));
        CHECK(c_pair(compose(rho, s1), compose(rho, s2)) == c_pair(s1, s2));
    }
}

TEST_CASE("invalid permutations rejected") {
    CHECK_THROWS(Permutation({0, 0}));
    CHECK_THROWS(Permutation({1, 2}));
    CHECK_THROWS(compose(Permutation::identity(2), Permutation::identity(3)));
}
