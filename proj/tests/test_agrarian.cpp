#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewlab/agrarian.hpp"

#include <random>

using namespace skewlab;

namespace {

GroupSpecPtr kleinSpec()
{
    PolyZLayer la, lb;
    lb.action = {{-1}};
    lb.actionInv = {{-1}};
    return GroupSpec::makePolyZ({la, lb}, "K", {"a", "b"});
}

GroupSpecPtr heisenbergSpec()
{
    PolyZLayer la, lb, lc;
    lb.action = {{1}};
    lb.actionInv = {{1}};
    lc.action = {{1}, {1, 2}};
    lc.actionInv = {{1}, {-1, 2}};
    return GroupSpec::makePolyZ({la, lb, lc}, "H", {"a", "b", "c"});
}

// Z/2 as a crossed-product-shaped group spec (torsion; scan use only).
GroupSpecPtr z2TorsionSpec()
{
    FiniteExtensionData fe;
    fe.normal = GroupSpec::makeFree(0, "1");
    fe.qMult = {{0, 1}, {1, 0}};
    fe.qInv = {0, 1};
    fe.action = {{}, {}};
    fe.factorSet = {{{}, {}}, {{}, {}}};
    return GroupSpec::makeFiniteExtension(fe, "C2");
}

} // namespace

TEST_CASE("Betti numbers of the free group (series model)")
{
    auto f2 = GroupSpec::makeFree(2, "F2", {"x", "y"});
    auto rep = bettiForGroup(f2, FieldKind::rationals(), 3);
    REQUIRE(rep.betti.size() == 2);
    CHECK(rep.betti[0].value == 0);
    CHECK(rep.betti[1].value == 1);
    CHECK(rep.exact);
    CHECK(rep.euler == -1);
    std::string detail;
    CHECK(eulerCheck(rep, {1, 2}, &detail));
    CHECK(detail.find("-1") != std::string::npos);
}

TEST_CASE("Betti numbers over Ore towers vanish for amenable examples")
{
    auto q = FieldKind::rationals();

    auto z2 = GroupSpec::makeFreeAbelian(2, "Z2", {"x", "y"});
    auto rep = bettiForGroup(z2, q);
    REQUIRE(rep.betti.size() == 3);
    for (const auto &b : rep.betti)
        CHECK(b.value == 0);
    CHECK(rep.euler == 0);
    CHECK(eulerCheck(rep, {1, 2, 1}));

    rep = bettiForGroup(kleinSpec(), q);
    REQUIRE(rep.betti.size() == 3);
    for (const auto &b : rep.betti)
        CHECK(b.value == 0);
    CHECK(eulerCheck(rep, {1, 2, 1}));

    // Heisenberg: the presentation 2-complex is not a full resolution (the
    // group has cohomological dimension 3), so only p <= 1 reflects group
    // Betti numbers; both vanish
    rep = bettiForGroup(heisenbergSpec(), q);
    CHECK(rep.betti[0].value == 0);
    CHECK(rep.betti[1].value == 0);
}

TEST_CASE("trivial group")
{
    auto triv = GroupSpec::makeFree(0, "1");
    auto rep = bettiForGroup(triv, FieldKind::rationals());
    REQUIRE(!rep.betti.empty());
    CHECK(rep.betti[0].value == 1);
    CHECK(rep.euler == 1);
    CHECK(eulerCheck(rep, {1, 0}));
}

TEST_CASE("euler check is inconclusive on inexact reports")
{
    BettiReport rep;
    rep.betti = {{0, false, "upper bound only"}};
    rep.exact = false;
    std::string detail;
    CHECK_FALSE(eulerCheck(rep, {1}, &detail));
    CHECK(detail.find("inconclusive") != std::string::npos);
}

TEST_CASE("rank is invariant under row and column shuffles")
{
    auto q = FieldKind::rationals();
    auto K = kleinSpec();
    auto pt = buildPolyZTower(K, q);
    auto cx = foxComplex(K, q);
    const GAMatrix &d2 = cx.differentials[1];
    TowerMatrix M(d2.size());
    for (size_t i = 0; i < d2.size(); ++i)
        for (const auto &e : d2[i])
            M[i].push_back(pt.embedAlgebra(e));
    int base = towerMatrixRank(M);
    std::mt19937 rng(5);
    for (int s = 0; s < 5; ++s) {
        TowerMatrix P = M;
        std::shuffle(P.begin(), P.end(), rng);
        std::vector<int> perm(P[0].size());
        for (size_t j = 0; j < perm.size(); ++j)
            perm[j] = (int)j;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto &row : P) {
            auto old = row;
            for (size_t j = 0; j < perm.size(); ++j)
                row[j] = old[perm[j]];
        }
        CHECK(towerMatrixRank(P) == base);
    }
}

TEST_CASE("index scaling")
{
    auto q = FieldKind::rationals();
    auto f2 = GroupSpec::makeFree(2, "F2", {"x", "y"});

    // index-2 kernel of F2 -> Z/2, free of rank 3
    auto r = scalingCheck(f2,
                          {normalForm(f2, {1, 1}), normalForm(f2, {1, 2}),
                           normalForm(f2, {2, -1})},
                          GroupSpec::makeFree(3, "F3"), q, 3);
    CHECK(r.index == 2);
    CHECK(r.passed);
    CHECK(r.subgroup.betti[1].value == 2);

    // index-3 kernel of F2 -> Z/3 (x -> 1, y -> 0), free of rank 4
    r = scalingCheck(f2,
                     {normalForm(f2, {1, 1, 1}), normalForm(f2, {2}),
                      normalForm(f2, {1, 2, -1}), normalForm(f2, {1, 1, 2, -1, -1})},
                     GroupSpec::makeFree(4, "F4"), q, 3);
    CHECK(r.index == 3);
    CHECK(r.passed);
    CHECK(r.subgroup.betti[1].value == 3);

    // Klein bottle >= Z^2, index 2: all Betti numbers vanish on both sides
    auto K = kleinSpec();
    r = scalingCheck(K, {normalForm(K, {1}), normalForm(K, {2, 2})},
                     GroupSpec::makeFreeAbelian(2, "Z2"), q);
    CHECK(r.index == 2);
    CHECK(r.passed);

    // wrong subgroup model is rejected
    CHECK_THROWS_AS(scalingCheck(f2,
                                 {normalForm(f2, {1, 1}), normalForm(f2, {1, 2}),
                                  normalForm(f2, {2, -1})},
                                 GroupSpec::makeFree(5, "F5"), q, 3),
                    MismatchError);
}

TEST_CASE("zerodivisor scans: clean groups")
{
    auto z = GroupSpec::makeFreeAbelian(1, "Z", {"x"});
    auto rep = zeroDivisorScan(z, FieldKind::primeField(2), 3, {1}, true);
    CHECK(!rep.refused);
    CHECK(!rep.found);
    CHECK(rep.pairsTested == 63 * 63);
    CHECK(rep.enumOrder == "ball-lex-v1");

    auto K = kleinSpec();
    rep = zeroDivisorScan(K, FieldKind::primeField(3), 2, {1, 2}, true);
    CHECK(!rep.refused);
    CHECK(!rep.found);
    CHECK(rep.pairsTested > 100000);

    auto f2 = GroupSpec::makeFree(2, "F2");
    rep = zeroDivisorScan(f2, FieldKind::primeField(2), 2, {1}, true);
    CHECK(!rep.found);

    // random mode is seed-deterministic
    auto ra = zeroDivisorScan(z, FieldKind::primeField(3), 3, {1, 2}, false, 99, 2000);
    auto rb = zeroDivisorScan(z, FieldKind::primeField(3), 3, {1, 2}, false, 99, 2000);
    CHECK(!ra.found);
    CHECK(ra.pairsTested == 2000);
    CHECK(ra.detail == rb.detail);
}

TEST_CASE("zerodivisor scan: torsion negative control and refusal")
{
    auto c2 = z2TorsionSpec();
    auto rep = zeroDivisorScan(c2, FieldKind::primeField(2), 2, {1}, true);
    CHECK(rep.found);
    CHECK(rep.factorA == rep.factorB); // (1+u)^2 = 0 in characteristic 2
    CHECK(rep.detail.find("zero product") != std::string::npos);

    // oversized exhaustive request is refused, not attempted
    auto f2 = GroupSpec::makeFree(2, "F2");
    rep = zeroDivisorScan(f2, FieldKind::primeField(3), 4, {1, 2}, true);
    CHECK(rep.refused);
    CHECK(rep.pairsTested == 0);
    CHECK(rep.detail.find("refused") != std::string::npos);
}
