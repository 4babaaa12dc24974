#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewlab/group.hpp"

#include <random>

using namespace skewlab;

namespace {
GroupSpecPtr kleinSpec() {
    PolyZLayer bottom, top;
    top.action = {Word{-1}};
    top.actionInv = {Word{-1}};
    return GroupSpec::makePolyZ({bottom, top}, "Klein", {"a", "b"});
}
} // namespace

TEST_CASE("whole group has index 1") {
    auto F2 = GroupSpec::makeFree(2);
    auto d = finiteIndexData(F2, {normalForm(F2, {1}), normalForm(F2, {2})});
    CHECK(d.index == 1);
    CHECK(d.transversal.size() == 1);
    CHECK(d.transversal[0].isIdentity());
}

TEST_CASE("Klein bottle <a, b^2> has index 2") {
    auto K = kleinSpec();
    auto d = finiteIndexData(K, {normalForm(K, {1}), normalForm(K, {2, 2})});
    CHECK(d.index == 2);
    REQUIRE(d.transversal.size() == 2);
    CHECK(d.transversal[0].isIdentity());
    CHECK(d.transversal[1] == normalForm(K, {2}));
    // factor set: t_1 * t_1 = b^2, a subgroup element
    auto f = d.factor(1, 1);
    CHECK(f.k == 0);
    CHECK(f.h == normalForm(K, {2, 2}));
    // membership recomposition on random elements
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Word w;
        for (int i = 0; i < int(rng() % 8); ++i) {
            int g = 1 + int(rng() % 2);
            w.push_back(rng() % 2 ? g : -g);
        }
        auto g = normalForm(K, w);
        auto [h, t] = d.membership(g);
        CHECK(multiply(h, d.transversal[t]) == g);
        CHECK(d.cosetOf(g) == t);
        // h lies in <a, b^2>: even b-exponent
        CHECK(h.exponents()[1] % 2 == 0);
    }
}

TEST_CASE("index-2 kernel in F2 is free of rank 3") {
    // kernel of F2 -> Z/2 sending both generators to 1, generated by
    // x^2, xy, y x^-1 (closed under the Schreier construction)
    auto F2 = GroupSpec::makeFree(2);
    auto d = finiteIndexData(
        F2, {normalForm(F2, {1, 1}), normalForm(F2, {1, 2}), normalForm(F2, {2, -1})});
    CHECK(d.index == 2);
    REQUIRE(d.subgroupFreeRank.has_value());
    // Nielsen-Schreier: rank = index*(ambient rank - 1) + 1 = 2*1 + 1
    CHECK(*d.subgroupFreeRank == 3);
    CHECK(d.schreierGenerators.size() == 3);
}

TEST_CASE("index-3 subgroup of F2 is free of rank 4") {
    // kernel of F2 -> Z/3 sending x -> 1, y -> 0
    auto F2 = GroupSpec::makeFree(2);
    auto d = finiteIndexData(F2, {normalForm(F2, {1, 1, 1}), normalForm(F2, {2}),
                                  normalForm(F2, {1, 2, -1}), normalForm(F2, {1, 1, 2, -1, -1})});
    CHECK(d.index == 3);
    REQUIRE(d.subgroupFreeRank.has_value());
    CHECK(*d.subgroupFreeRank == 4);
}

TEST_CASE("infinite index in a free group is detected") {
    auto F2 = GroupSpec::makeFree(2);
    CHECK_THROWS_AS(finiteIndexData(F2, {normalForm(F2, {1})}), InputError);
}

TEST_CASE("coset bound is enforced") {
    auto Z2 = GroupSpec::makeFreeAbelian(2);
    CHECK_THROWS_AS(finiteIndexData(Z2, {normalForm(Z2, {1})}, 50), ResourceExceededError);
}

TEST_CASE("transversal units multiply per the factor table") {
    auto K = kleinSpec();
    auto d = finiteIndexData(K, {normalForm(K, {1}), normalForm(K, {2, 2})});
    for (int i = 0; i < d.index; ++i)
        for (int j = 0; j < d.index; ++j) {
            auto f = d.factor(i, j);
            CHECK(multiply(d.transversal[i], d.transversal[j]) ==
                  multiply(f.h, d.transversal[f.k]));
        }
}
