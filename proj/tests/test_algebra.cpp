#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewlab/algebra.hpp"

#include <random>

using namespace skewlab;

namespace {
GroupSpecPtr kleinSpec() {
    PolyZLayer bottom, top;
    top.action = {Word{-1}};
    top.actionInv = {Word{-1}};
    return GroupSpec::makePolyZ({bottom, top}, "Klein", {"a", "b"});
}

GroupAlgebraElement randomElem(std::mt19937 &rng, const GroupSpecPtr &spec, FieldKind k) {
    GroupAlgebraElement e = GroupAlgebraElement::zero(spec, k);
    int nterms = int(rng() % 4);
    for (int i = 0; i < nterms; ++i) {
        Word w;
        for (int j = 0; j < int(rng() % 5); ++j) {
            int g = 1 + int(rng() % spec->rank());
            w.push_back(rng() % 2 ? g : -g);
        }
        long num = long(rng() % 7) - 3;
        e.addTerm(normalForm(spec, w), Scalar::fromInt(k, num));
    }
    return e;
}
} // namespace

TEST_CASE("basic products") {
    auto Q = FieldKind::rationals();
    auto F1 = GroupSpec::makeFree(1, "F1", {"x"});
    auto one = GroupAlgebraElement::one(F1, Q);
    auto x = GroupAlgebraElement::monomial(normalForm(F1, {1}), Scalar::one(Q));
    // (1 + x)(1 - x) = 1 - x^2
    auto p = (one + x) * (one - x);
    auto expect = one - GroupAlgebraElement::monomial(normalForm(F1, {1, 1}), Scalar::one(Q));
    CHECK(p == expect);
    // f * 0 = 0
    CHECK((p * GroupAlgebraElement::zero(F1, Q)).isZero());
}

TEST_CASE("Klein square over F2") {
    auto F2f = FieldKind::primeField(2);
    auto K = kleinSpec();
    auto s = Scalar::one(F2f);
    auto ab = GroupAlgebraElement::monomial(normalForm(K, {1}), s) +
              GroupAlgebraElement::monomial(normalForm(K, {2}), s);
    auto sq = ab * ab;
    // (a+b)^2 = a^2 + ab + ba + b^2 with ba = a^-1 b
    GroupAlgebraElement expect = GroupAlgebraElement::zero(K, F2f);
    expect.addTerm(normalForm(K, {1, 1}), s);
    expect.addTerm(normalForm(K, {1, 2}), s);
    expect.addTerm(normalForm(K, {-1, 2}), s);
    expect.addTerm(normalForm(K, {2, 2}), s);
    CHECK(sq == expect);
    CHECK(sq.supportSize() == 4);
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(42);
    std::vector<GroupSpecPtr> specs = {GroupSpec::makeFree(2), GroupSpec::makeFreeAbelian(2),
                                       kleinSpec()};
    std::vector<FieldKind> fields = {FieldKind::rationals(), FieldKind::primeField(3)};
    for (auto &spec : specs)
        for (auto k : fields)
            for (int trial = 0; trial < 1700; ++trial) {
                auto f = randomElem(rng, spec, k);
                auto g = randomElem(rng, spec, k);
                auto h = randomElem(rng, spec, k);
                CHECK((f * g) * h == f * (g * h));
                CHECK(f * (g + h) == f * g + f * h);
                CHECK((f + g) * h == f * h + g * h);
                CHECK((f - f).isZero());
                CHECK(f.augmentation() * g.augmentation() == (f * g).augmentation());
            }
}

TEST_CASE("Fox complex of the free group") {
    auto Q = FieldKind::rationals();
    auto F2 = GroupSpec::makeFree(2, "F2", {"a", "b"});
    auto cx = foxComplex(F2, Q);
    REQUIRE(cx.dims == std::vector<int>{1, 2});
    REQUIRE(cx.differentials.size() == 1);
    auto a = normalForm(F2, {1}), b = normalForm(F2, {2});
    auto e = identity(F2);
    CHECK(cx.differentials[0][0][0] ==
          GroupAlgebraElement::monomial(a, Scalar::one(Q)) -
              GroupAlgebraElement::one(F2, Q));
    CHECK(cx.differentials[0][1][0] ==
          GroupAlgebraElement::monomial(b, Scalar::one(Q)) -
              GroupAlgebraElement::one(F2, Q));
    (void)e;
}

TEST_CASE("Fox complex of the Klein bottle group") {
    auto Q = FieldKind::rationals();
    auto K = kleinSpec();
    auto cx = foxComplex(K, Q);
    REQUIRE(cx.dims == std::vector<int>{1, 2, 1});
    // relator b a b^-1 a: dr/da = b + b a b^-1 = b + a^-1, dr/db = 1 - b a b^-1 = 1 - a^-1
    auto s = Scalar::one(Q);
    GroupAlgebraElement dra = GroupAlgebraElement::zero(K, Q);
    dra.addTerm(normalForm(K, {2}), s);
    dra.addTerm(normalForm(K, {-1}), s);
    GroupAlgebraElement drb = GroupAlgebraElement::one(K, Q);
    drb.addTerm(normalForm(K, {-1}), -s);
    CHECK(cx.differentials[1][0][0] == dra);
    CHECK(cx.differentials[1][0][1] == drb);
    CHECK(gaMatIsZero(gaMatMul(cx.differentials[1], cx.differentials[0])));
}

TEST_CASE("Fox complex of Z^2") {
    auto Q = FieldKind::rationals();
    auto Z2 = GroupSpec::makeFreeAbelian(2, "Z2", {"x", "y"});
    auto cx = foxComplex(Z2, Q);
    REQUIRE(cx.dims == std::vector<int>{1, 2, 1});
    auto s = Scalar::one(Q);
    // relator x y x^-1 y^-1: dr/dx = 1 - xyx^-1 = 1 - y, dr/dy = x - 1
    GroupAlgebraElement drx = GroupAlgebraElement::one(Z2, Q);
    drx.addTerm(normalForm(Z2, {2}), -s);
    GroupAlgebraElement dry = GroupAlgebraElement::monomial(normalForm(Z2, {1}), s);
    dry.addTerm(identity(Z2), -s);
    CHECK(cx.differentials[1][0][0] == drx);
    CHECK(cx.differentials[1][0][1] == dry);
}

TEST_CASE("Fox complex of the Heisenberg group composes to zero") {
    PolyZLayer la, lb, lc;
    lb.action = {Word{1}};
    lb.actionInv = {Word{1}};
    lc.action = {Word{1}, Word{1, 2}};
    lc.actionInv = {Word{1}, Word{-1, 2}};
    auto H = GroupSpec::makePolyZ({la, lb, lc}, "Heis", {"a", "b", "c"});
    for (auto k : {FieldKind::rationals(), FieldKind::primeField(2)}) {
        auto cx = foxComplex(H, k);
        CHECK(cx.dims == std::vector<int>{1, 3, 3});
        CHECK(gaMatIsZero(gaMatMul(cx.differentials[1], cx.differentials[0])));
    }
}
