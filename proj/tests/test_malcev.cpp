#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewlab/malcev.hpp"

#include <random>

using namespace skewlab;

namespace {

GroupSpecPtr F2() { return GroupSpec::makeFree(2, "F2", {"x", "y"}); }

GroupAlgebraElement mono(const GroupSpecPtr &s, FieldKind k, const Word &w, long n)
{
    return GroupAlgebraElement::monomial(normalForm(s, w), Scalar::fromInt(k, n));
}

} // namespace

TEST_CASE("bi-order basics")
{
    auto s = F2();
    auto e = identity(s);
    auto x = normalForm(s, {1}), y = normalForm(s, {2});
    auto xi = inverse(x), yi = inverse(y);

    CHECK(magnusCompare(e, x) < 0);
    CHECK(magnusCompare(xi, e) < 0);
    CHECK(magnusCompare(y, x) < 0); // first deg-1 difference is the X coefficient
    CHECK(magnusCompare(x, x) == 0);
    CHECK(magnusCompare(yi, e) < 0);
    CHECK(magnusCompare(xi, yi) < 0);

    // bi-invariance on samples
    std::mt19937 rng(11);
    auto rnd = [&](int len) {
        Word w;
        for (int i = 0; i < len; ++i) {
            int l = 1 + (int)(rng() % 2);
            w.push_back(rng() % 2 ? l : -l);
        }
        return normalForm(s, w);
    };
    for (int t = 0; t < 120; ++t) {
        auto g = rnd(1 + t % 4), h = rnd(1 + (t / 2) % 4), a = rnd(3);
        int c = magnusCompare(g, h);
        if (c == 0)
            continue;
        CHECK(magnusCompare(multiply(a, g), multiply(a, h)) == c);
        CHECK(magnusCompare(multiply(g, a), multiply(h, a)) == c);
        CHECK(magnusCompare(inverse(g), inverse(h)) == -c);
    }
}

TEST_CASE("expansion degree and injectivity")
{
    auto s = F2();
    CHECK(magnusDegree(identity(s)) == 0);
    CHECK(magnusDegree(normalForm(s, {1})) == 1);
    CHECK(magnusDegree(normalForm(s, {1, 1, 1})) == 1);
    CHECK(magnusDegree(normalForm(s, {-2})) == 1);
    // commutator [x, y] has degree 2
    CHECK(magnusDegree(normalForm(s, {1, 2, -1, -2})) == 2);
    // [[x, y], y] has degree 3
    Word c = {1, 2, -1, -2};
    Word w = c;
    w.push_back(2);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        w.push_back(-*it);
    w.push_back(-2);
    CHECK(magnusDegree(normalForm(s, w)) == 3);

    // distinct elements compare nonzero (expansion separates them)
    std::vector<GroupElement> els;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            Word u;
            for (int i = 0; i < std::abs(a); ++i)
                u.push_back(a > 0 ? 1 : -1);
            for (int i = 0; i < std::abs(b); ++i)
                u.push_back(b > 0 ? 2 : -2);
            els.push_back(normalForm(s, u));
        }
    for (size_t i = 0; i < els.size(); ++i)
        for (size_t j = i + 1; j < els.size(); ++j)
            CHECK(magnusCompare(els[i], els[j]) != 0);
}

TEST_CASE("worked inverses")
{
    auto s = F2();
    auto k = FieldKind::rationals();
    auto one = GroupAlgebraElement::one(s, k);

    // single monomial: exact
    auto a = mono(s, k, {1}, 3);
    auto inv = mnInverse(a, 4);
    CHECK(inv.terms == mono(s, k, {-1}, 1).scale(Scalar::fromInt(k, 3).inverse()));
    CHECK(a * inv.terms == one);

    // 1 - x at order 3: the geometric series 1 + x + x^2 + x^3
    auto b = one - mono(s, k, {1}, 1);
    auto binv = mnInverse(b, 3);
    auto expect = one + mono(s, k, {1}, 1) + mono(s, k, {1, 1}, 1) + mono(s, k, {1, 1, 1}, 1);
    CHECK(binv.terms == expect);
    CHECK(truncateToLength(b * binv.terms, 3) == one);
    CHECK(binv.minimalTerm() == identity(s));

    // x - 1 is the negation: -(1 + x + x^2 + x^3)
    auto cinv = mnInverse(mono(s, k, {1}, 1) - one, 3);
    CHECK(cinv.terms == -expect);

    // mixed letters: x + y, certified boundary behaviour
    auto d = mono(s, k, {1}, 1) + mono(s, k, {2}, 1);
    auto dinv = mnInverse(d, 3);
    CHECK(truncateToLength(d * dinv.terms, 3) == one);
    CHECK(dinv.minimalTerm() == normalForm(s, Word{-2}));

    // support with inverse letters: residue sits only at the boundary
    auto g = one - mono(s, k, {-1}, 1);
    auto ginv = mnInverse(g, 4);
    auto residue = g * ginv.terms - one;
    for (const auto &[el, co] : residue.terms())
        CHECK(el.freeWord().size() > 3); // order - maxLen = 4 - 1

    CHECK_THROWS_AS(mnInverse(GroupAlgebraElement::zero(s, k), 3), DivisionByZeroError);
    CHECK_THROWS_AS(mnInverse(one, 0), InputError);
}

TEST_CASE("random multiply-back")
{
    auto s = F2();
    for (long p : {0L, 5L}) {
        auto k = p ? FieldKind::primeField(p) : FieldKind::rationals();
        auto one = GroupAlgebraElement::one(s, k);
        std::mt19937 rng(p ? 23 : 17);
        // a = nonzero constant + positive words: the minimal term is the
        // identity, every series term is a positive word, and multiplying
        // back truncates to exactly 1
        int done = 0;
        while (done < 100) {
            GroupAlgebraElement a(s, k);
            a.addTerm(identity(s), Scalar::fromInt(k, 1 + (long)(rng() % 4)));
            int nt = (int)(rng() % 4);
            for (int t = 0; t < nt; ++t) {
                Word w;
                int len = 1 + (int)(rng() % 3);
                for (int i = 0; i < len; ++i)
                    w.push_back(1 + (int)(rng() % 2));
                a.addTerm(normalForm(s, w), Scalar::fromInt(k, (long)(rng() % 7) - 3));
            }
            if (a.isZero())
                continue;
            int order = 1 + (int)(rng() % 5);
            auto inv = mnInverse(a, order);
            CHECK(truncateToLength(a * inv.terms, order) == one);
            ++done;
        }
        // general supports with inverse letters: the certified boundary
        // property (residue only beyond order - maxLen)
        done = 0;
        while (done < 100) {
            GroupAlgebraElement a(s, k);
            int nt = 1 + (int)(rng() % 4);
            int maxLen = 0;
            for (int t = 0; t < nt; ++t) {
                Word w;
                int len = (int)(rng() % 3);
                for (int i = 0; i < len; ++i) {
                    int l = 1 + (int)(rng() % 2);
                    w.push_back(rng() % 2 ? l : -l);
                }
                a.addTerm(normalForm(s, w), Scalar::fromInt(k, (long)(rng() % 7) - 3));
            }
            if (a.isZero())
                continue;
            for (const auto &[g, co] : a.terms())
                maxLen = std::max<int>(maxLen, (int)g.freeWord().size());
            int order = maxLen + 1 + (int)(rng() % 4);
            auto inv = mnInverse(a, order);
            auto residue = a * inv.terms - one;
            for (const auto &[g, co] : residue.terms())
                CHECK((int)g.freeWord().size() > order - maxLen);
            ++done;
        }
    }
}

TEST_CASE("series rank")
{
    auto s = F2();
    auto k = FieldKind::rationals();
    auto one = GroupAlgebraElement::one(s, k);
    auto zero = GroupAlgebraElement::zero(s, k);
    auto x1 = mono(s, k, {1}, 1) - one; // x - 1
    auto y1 = mono(s, k, {2}, 1) - one; // y - 1

    // the Jacobian row of Z x Z would be (x-1, y-1); over the free group the
    // single row has rank 1, stabilized by order 2
    auto r = mnRank({{x1, y1}}, 2);
    CHECK(r.lowerBound == 1);
    CHECK(r.stabilized);
    r = mnRank({{x1, y1}}, 4);
    CHECK(r.lowerBound == 1);
    CHECK(r.stabilized);

    // identity and zero matrices
    r = mnRank({{one, zero}, {zero, one}}, 1);
    CHECK(r.lowerBound == 2);
    CHECK(r.stabilized);
    r = mnRank({{zero, zero}, {zero, zero}}, 3);
    CHECK(r.lowerBound == 0);
    CHECK(r.stabilized);

    // dependent rows eliminate: (a; x*a) has rank 1
    auto a = one + mono(s, k, {1}, 1);
    auto xa = a.translate(normalForm(s, Word{1}));
    r = mnRank({{a, a + a}, {xa, xa + xa}}, 3);
    CHECK(r.lowerBound == 1);
    CHECK(r.stabilized);

    // full rank 2x2 with series pivots
    auto b = one - mono(s, k, {2}, 1);
    r = mnRank({{a, one}, {zero, b}}, 3);
    CHECK(r.lowerBound == 2);
    CHECK(r.stabilized);

    // monotone nondecreasing in the order on a sample
    int prev = 0;
    for (int n = 1; n <= 4; ++n) {
        auto rr = mnRank({{x1, y1}, {y1, x1}}, n);
        CHECK(rr.lowerBound >= prev);
        prev = rr.lowerBound;
    }
    CHECK(prev == 2);

    CHECK_THROWS_AS(mnRank({{one}}, 0), InputError);
    CHECK_THROWS_AS(mnRank({{one, zero}, {one}}, 2), InputError);
}
