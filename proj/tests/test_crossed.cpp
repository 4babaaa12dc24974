#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewlab/crossed.hpp"

#include <random>

using namespace skewlab;

namespace {

// Klein bottle as Z^2-by-Z/2: normal <a, c> with c = b^2, u_b a u_b^-1 = a^-1,
// u_b^2 = c.
GroupSpecPtr kleinExtension() {
    FiniteExtensionData d;
    d.normal = GroupSpec::makeFreeAbelian(2, "Z2", {"a", "c"});
    d.qMult = {{0, 1}, {1, 0}};
    d.qInv = {0, 1};
    d.action = {{Word{1}, Word{2}}, {Word{-1}, Word{2}}};
    d.factorSet = {{Word{}, Word{}}, {Word{}, Word{2}}};
    return GroupSpec::makeFiniteExtension(d, "KleinExt");
}

// Z/2 over the plain base field: torsion input, a deliberate negative control.
TowerPtr torsionControl(FieldKind k) {
    auto base = Tower::base(k);
    auto one = TowerElem::one(base);
    return Tower::crossed(base, {{0, 1}, {1, 0}}, {0, 1}, {{}, {}}, {{}, {}},
                          {{one, one}, {one, one}});
}

GroupElement randomExtElem(std::mt19937 &rng, const GroupSpecPtr &E) {
    const auto &fe = *E->finiteExt;
    Word w;
    for (int i = 0; i < int(rng() % 5); ++i) {
        int g = 1 + int(rng() % 2);
        w.push_back(rng() % 2 ? g : -g);
    }
    return makeExtensionElement(E, normalForm(fe.normal, w), int(rng() % fe.qMult.size()));
}

} // namespace

TEST_CASE("worked Klein inverse of a + b") {
    auto ct = buildCrossedTower(kleinExtension(), FieldKind::rationals());
    const TowerPtr &below = ct.tower->below;
    auto a = TowerElem::generatorElem(below, 0);
    auto c = TowerElem::generatorElem(below, 1);
    auto one = TowerElem::one(below);

    // x = a + u_b
    std::vector<TowerElem> xc = {a, one};
    auto x = TowerElem::fromCoords(ct.tower, xc);
    auto xi = x.inverse();
    CHECK((x * xi).isOne());
    CHECK((xi * x).isOne());
    // closed form a^-1 (1-c)^-1 - (1-c)^-1 u_b
    auto w = (one - c).inverse();
    std::vector<TowerElem> expect = {a.inverse() * w, -w};
    CHECK(xi == TowerElem::fromCoords(ct.tower, expect));
}

TEST_CASE("twisted unit inversion") {
    auto ct = buildCrossedTower(kleinExtension(), FieldKind::rationals());
    auto u = TowerElem::crossedUnit(ct.tower, 1);
    auto ui = u.inverse();
    CHECK((u * ui).isOne());
    CHECK((ui * u).isOne());
    // u_b^-1 = f(b,b)^-1 u_b = c^-1 u_b since b^-1 = b in Q
    auto c = TowerElem::generatorElem(ct.tower->below, 1);
    std::vector<TowerElem> expect = {TowerElem::zero(ct.tower->below), c.inverse()};
    CHECK(ui == TowerElem::fromCoords(ct.tower, expect));
    CHECK(TowerElem::one(ct.tower).inverse() == TowerElem::one(ct.tower));
}

TEST_CASE("embedding is a ring homomorphism") {
    auto E = kleinExtension();
    for (auto k : {FieldKind::rationals(), FieldKind::primeField(3)}) {
        auto ct = buildCrossedTower(E, k);
        std::mt19937 rng(k.isRational() ? 1u : 2u);
        for (int trial = 0; trial < 100; ++trial) {
            auto g = randomExtElem(rng, E);
            auto h = randomExtElem(rng, E);
            CHECK(ct.embedElement(multiply(g, h)) == ct.embedElement(g) * ct.embedElement(h));
            CHECK((ct.embedElement(g) * ct.embedElement(inverse(g))).isOne());
        }
    }
}

TEST_CASE("200 random inversions over Q and F3") {
    auto E = kleinExtension();
    for (auto k : {FieldKind::rationals(), FieldKind::primeField(3)}) {
        auto ct = buildCrossedTower(E, k);
        std::mt19937 rng(k.isRational() ? 11u : 13u);
        GroupAlgebraElement e = GroupAlgebraElement::zero(E, k);
        for (int trial = 0; trial < 200; ++trial) {
            GroupAlgebraElement x = GroupAlgebraElement::zero(E, k);
            int terms = 1 + int(rng() % 3);
            for (int i = 0; i < terms; ++i)
                x.addTerm(randomExtElem(rng, E), Scalar::fromInt(k, long(rng() % 5) - 2));
            auto img = ct.embedAlgebra(x);
            if (img.isZero())
                continue;
            auto inv = img.inverse();
            CHECK((img * inv).isOne());
            CHECK((inv * img).isOne());
        }
    }
}

TEST_CASE("compatibility square on the normal subalgebra") {
    // elements of kN embedded via the group (as (h, 0) pairs) agree with the
    // lift of their tower image
    auto E = kleinExtension();
    auto ct = buildCrossedTower(E, FieldKind::rationals());
    const auto &fe = *E->finiteExt;
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        Word w;
        for (int i = 0; i < int(rng() % 6); ++i) {
            int g = 1 + int(rng() % 2);
            w.push_back(rng() % 2 ? g : -g);
        }
        auto h = normalForm(fe.normal, w);
        auto viaGroup = ct.embedElement(makeExtensionElement(E, h, 0));
        auto viaTower = liftTo(ct.tower, ct.belowTower.embedElement(h));
        CHECK(viaGroup == viaTower);
    }
}

TEST_CASE("domain fuzz finds nothing on the Klein crossed product") {
    auto ct = buildCrossedTower(kleinExtension(), FieldKind::primeField(2));
    auto rep = domainFuzz(ct.tower, 200, 3, 424242);
    CHECK_FALSE(rep.zeroDivisorFound);
    CHECK(rep.trials == 200);
    // determinism
    auto rep2 = domainFuzz(ct.tower, 200, 3, 424242);
    CHECK(rep2.detail == rep.detail);
}

TEST_CASE("negative control: torsion input has zero divisors") {
    for (auto k : {FieldKind::primeField(2), FieldKind::rationals()}) {
        auto t = torsionControl(k);
        auto one = TowerElem::one(t);
        auto u = TowerElem::crossedUnit(t, 1);
        // (1+u)(1-u) = 0; over F2 this is (1+u)(1+u)
        CHECK(((one + u) * (one - u)).isZero());
        CHECK_THROWS_AS((one + u).inverse(), ZeroDivisorError);
        try {
            (void)(one + u).inverse();
        } catch (const ZeroDivisorError &e) {
            CHECK_FALSE(e.witness.isZero());
            CHECK((e.witness * (one + u)).isZero());
        }
        auto rep = domainFuzz(t, 5000, 2, 7);
        CHECK(rep.zeroDivisorFound);
        CHECK((rep.factorA * rep.factorB).isZero());
        CHECK_FALSE(rep.factorA.isZero());
        CHECK_FALSE(rep.factorB.isZero());
    }
}
