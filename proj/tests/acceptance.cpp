// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Each criterion carries a wall-clock budget.

#include "skewlab/agrarian.hpp"
#include "skewlab/crossed.hpp"
#include "skewlab/graphrings.hpp"
#include "skewlab/malcev.hpp"
#include "skewlab/rank.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

using namespace skewlab;

namespace {

int failures = 0;

void criterion(int number, const std::string &title, double budgetSeconds,
               const std::function<bool(std::string &)> &body)
{
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception &e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budgetSeconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s  %d  %-28s (%.1fs / %.0fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), secs, budgetSeconds, detail.empty() ? "" : "  -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

// --- shared group specs ----------------------------------------------------

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

GroupSpecPtr kleinExtension()
{
    FiniteExtensionData fe;
    fe.normal = GroupSpec::makeFreeAbelian(2, "Z2", {"a", "c"});
    fe.qMult = {{0, 1}, {1, 0}};
    fe.qInv = {0, 1};
    fe.action = {{{1}, {2}}, {{-1}, {2}}};
    fe.factorSet = {{{}, {}}, {{}, {2}}};
    return GroupSpec::makeFiniteExtension(fe, "K-ext");
}

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

// --- commutative rational-function oracle (criterion 9) --------------------

using LPoly = std::map<int, mpq_class>;

LPoly lpAdd(const LPoly &a, const LPoly &b)
{
    LPoly out = a;
    for (auto &[d, c] : b) {
        out[d] += c;
        if (out[d] == 0)
            out.erase(d);
    }
    return out;
}

LPoly lpMul(const LPoly &a, const LPoly &b)
{
    LPoly out;
    for (auto &[i, x] : a)
        for (auto &[j, y] : b) {
            out[i + j] += x * y;
            if (out[i + j] == 0)
                out.erase(i + j);
        }
    return out;
}

struct RatFunc {
    LPoly num, den;
};

bool rfEqual(const RatFunc &a, const RatFunc &b)
{
    return lpMul(a.num, b.den) == lpMul(b.num, a.den);
}

RatFunc toOracle(const TowerElem &x)
{
    const OreFraction &f = x.fraction();
    RatFunc out;
    for (auto &[d, c] : f.den.coeffs)
        out.den[d] = c.scalar().rationalValue();
    for (auto &[d, c] : f.num.coeffs)
        out.num[d] = c.scalar().rationalValue();
    if (out.num.empty())
        out.den = {{0, 1}};
    return out;
}

SkewPoly randomPoly(std::mt19937 &rng, const TowerPtr &t, int maxDeg, bool nonzero)
{
    SkewPoly p = SkewPoly::zero(t);
    for (int d = 0; d <= maxDeg; ++d)
        if (rng() % 2) {
            long c = long(rng() % 7) - 3;
            if (c != 0)
                p.coeffs[d] = TowerElem::fromScalar(t->below, Scalar::fromInt(t->field, c));
        }
    p.prune();
    if (nonzero && p.isZero())
        p.coeffs[0] = TowerElem::one(t->below);
    return p;
}

// --- graph-of-rings helpers (criterion 8) ----------------------------------

BasedRing polyRing(FieldKind f, const std::string &var)
{
    BasedRing r;
    r.field = f;
    r.name = "k[" + var + "]";
    r.mulBasis = [f](int i, int j) { return BRElem{{i + j, Scalar::one(f)}}; };
    r.degreeOf = [](int i) { return i; };
    r.indicesOfDegree = [](int d) { return std::vector<int>{d}; };
    r.basisName = [var](int i) { return i ? var + "^" + std::to_string(i) : "1"; };
    return r;
}

} // namespace

int main()
{
    auto q = FieldKind::rationals();
    auto f2field = FieldKind::primeField(2);
    auto f3field = FieldKind::primeField(3);

    criterion(1, "b0 vanishing", 60, [&](std::string &detail) {
        std::vector<GroupSpecPtr> groups = {
            GroupSpec::makeFreeAbelian(1, "Z", {"t"}),
            GroupSpec::makeFreeAbelian(2, "Z2", {"x", "y"}),
            GroupSpec::makeFree(2, "F2", {"x", "y"}),
            GroupSpec::makeFree(3, "F3", {"x", "y", "z"}),
            kleinSpec(),
            heisenbergSpec(),
        };
        for (const auto &g : groups) {
            auto rep = bettiForGroup(g, q);
            if (rep.betti[0].value != 0 || !rep.betti[0].exact) {
                detail = g->name + ": b0 = " + std::to_string(rep.betti[0].value) +
                         (rep.betti[0].exact ? "" : " (inexact)");
                return false;
            }
        }
        detail = "Z, Z2, F2, F3, Klein, Heisenberg all have exact b0 = 0";
        return true;
    });

    criterion(2, "Euler identity", 60, [&](std::string &detail) {
        auto f2 = bettiForGroup(GroupSpec::makeFree(2, "F2", {"x", "y"}), q);
        if (!f2.exact || f2.betti[0].value != 0 || f2.betti[1].value != 1 || f2.euler != -1) {
            detail = "F2 got (" + std::to_string(f2.betti[0].value) + "," +
                     std::to_string(f2.betti[1].value) + "), euler " +
                     std::to_string(f2.euler);
            return false;
        }
        for (const auto &g : {GroupSpec::makeFreeAbelian(2, "Z2", {"x", "y"}), kleinSpec()}) {
            auto rep = bettiForGroup(g, q);
            for (const auto &b : rep.betti)
                if (b.value != 0 || !b.exact) {
                    detail = g->name + " has a nonzero or inexact Betti number";
                    return false;
                }
            if (rep.euler != 0) {
                detail = g->name + " euler = " + std::to_string(rep.euler);
                return false;
            }
        }
        detail = "F2: (0,1), chi=-1; Z2 and Klein: zero, chi=0";
        return true;
    });

    criterion(3, "index scaling", 300, [&](std::string &detail) {
        auto F2 = GroupSpec::makeFree(2, "F2", {"x", "y"});
        auto mk = [&](std::initializer_list<Word> ws) {
            std::vector<GroupElement> out;
            for (const auto &w : ws)
                out.push_back(normalForm(F2, w));
            return out;
        };
        auto r2 = scalingCheck(F2, mk({{1, 1}, {1, 2}, {2, -1}}), GroupSpec::makeFree(3), q);
        if (!r2.passed || r2.index != 2 || r2.subgroup.betti[1].value != 2) {
            detail = "F2 >= F3: " + r2.detail;
            return false;
        }
        auto r3 = scalingCheck(F2, mk({{1, 1, 1}, {2}, {1, 2, -1}, {1, 1, 2, -1, -1}}),
                               GroupSpec::makeFree(4), q);
        if (!r3.passed || r3.index != 3 || r3.subgroup.betti[1].value != 3) {
            detail = "F2 >= F4: " + r3.detail;
            return false;
        }
        detail = "index 2: b1 = 2 = 2*1; index 3: b1 = 3 = 3*1";
        return true;
    });

    criterion(4, "independence witnesses", 60, [&](std::string &detail) {
        auto K = kleinSpec();
        auto pt = buildPolyZTower(K, q);
        auto a = normalForm(K, {1});
        auto b = normalForm(K, {2});
        auto hf = hfWitnessCheck(pt, {a}, b, 5);
        if (!hf.supported || !hf.independent) {
            detail = "HF mode: " + hf.detail;
            return false;
        }
        auto l = lWitnessCheck(pt, {a, normalForm(K, {2, 2})}, {identity(K), b});
        if (!l.supported || !l.independent) {
            detail = "L mode: " + l.detail;
            return false;
        }
        detail = "HF (N = <a>, t = b, range 5) and L (transversal {1, b}) both verified";
        return true;
    });

    criterion(5, "crossed-product inverses", 300, [&](std::string &detail) {
        auto E = kleinExtension();
        for (auto field : {q, f3field}) {
            auto ct = buildCrossedTower(E, field);
            const TowerPtr &below = ct.tower->below;
            std::mt19937 rng(field.isRational() ? 11u : 12u);
            auto randomExtElem = [&] {
                Word w;
                for (int i = 0; i < int(rng() % 5); ++i) {
                    int g = 1 + int(rng() % 2);
                    w.push_back(rng() % 2 ? g : -g);
                }
                return makeExtensionElement(E, normalForm(E->finiteExt->normal, w),
                                            int(rng() % 2));
            };
            int done = 0;
            while (done < 200) {
                GroupAlgebraElement a = GroupAlgebraElement::zero(E, field);
                int terms = 1 + int(rng() % 3);
                for (int i = 0; i < terms; ++i)
                    a.addTerm(randomExtElem(), Scalar::fromInt(field, long(rng() % 5) - 2));
                auto x = ct.embedAlgebra(a);
                if (x.isZero())
                    continue;
                auto xi = x.inverse();
                if (!(x * xi).isOne() || !(xi * x).isOne()) {
                    detail = "two-sided check failed over " + field.name();
                    return false;
                }
                ++done;
            }
            // closed form for a + u_b: a^-1 (1-c)^-1 - (1-c)^-1 u_b
            auto A = TowerElem::generatorElem(below, 0);
            auto C = TowerElem::generatorElem(below, 1);
            auto one = TowerElem::one(below);
            auto x = TowerElem::fromCoords(ct.tower, {A, one});
            auto w = (one - C).inverse();
            if (x.inverse() != TowerElem::fromCoords(ct.tower, {A.inverse() * w, -w})) {
                detail = "closed-form inverse mismatch over " + field.name();
                return false;
            }
        }
        detail = "2 x 200 random inverses exact; worked a + b inverse matches";
        return true;
    });

    criterion(6, "Kaplansky scans", 1800, [&](std::string &detail) {
        struct Case {
            GroupSpecPtr g;
            int support;
        };
        std::vector<Case> cases = {{GroupSpec::makeFreeAbelian(1, "Z", {"t"}), 3},
                                   {GroupSpec::makeFreeAbelian(2, "Z2", {"x", "y"}), 2},
                                   {kleinSpec(), 2},
                                   {GroupSpec::makeFree(2, "F2", {"x", "y"}), 2}};
        long long pairs = 0;
        for (auto field : {f2field, f3field}) {
            std::vector<long> coeffs;
            for (long c = 1; c < field.p; ++c)
                coeffs.push_back(c);
            for (const auto &[g, support] : cases) {
                auto rep = zeroDivisorScan(g, field, support, coeffs, true);
                if (rep.refused || rep.found) {
                    detail = g->name + " over " + field.name() + ": " + rep.detail;
                    return false;
                }
                pairs += rep.pairsTested;
            }
        }
        auto neg = zeroDivisorScan(z2TorsionSpec(), f2field, 2, {1}, true);
        if (!neg.found) {
            detail = "Z/2 negative control found nothing";
            return false;
        }
        std::ostringstream s;
        s << pairs << " torsion-free pairs clean; Z/2 control: (" << neg.factorA << ") * ("
          << neg.factorB << ") = 0";
        detail = s.str();
        return true;
    });

    criterion(7, "Sylvester axiom suite", 600, [&](std::string &detail) {
        std::vector<std::pair<TowerPtr, unsigned>> towers = {
            {buildPolyZTower(GroupSpec::makeFreeAbelian(1, "Z", {"t"}), q).tower, 7},
            {buildPolyZTower(GroupSpec::makeFreeAbelian(2, "Z2", {"x", "y"}), q).tower, 8},
            {buildPolyZTower(kleinSpec(), q).tower, 9},
        };
        for (const auto &[t, seed] : towers) {
            auto rk = rankOverTower(t);
            if (rk({{TowerElem::one(t)}}) != 1 || rk({{TowerElem::zero(t)}}) != 0) {
                detail = t->describe() + ": rk(1)/rk(0) spot check failed";
                return false;
            }
            auto rep = axiomSuite(rk, t, defaultEntrySampler(t), 1000, seed);
            if (!rep.passed) {
                detail = t->describe() + ": " + rep.violations[0].axiom + ": " +
                         rep.violations[0].detail;
                return false;
            }
        }
        detail = "3 towers x 1000 trials, axioms (1)-(4) hold; rk(1) = 1, rk(0) = 0";
        return true;
    });

    criterion(8, "graph-of-rings normal forms", 600, [&](std::string &detail) {
        auto B = polyRing(q, "x"), C = polyRing(q, "y");
        if (coprodBasisWords(B, C, 6).size() != 127) {
            detail = "freeness certificate: basis count != 127";
            return false;
        }
        // 3-vertex graph, 100 random loop round trips
        GraphOfRingsSpec spec;
        std::vector<PolyZTower> towers;
        for (int v = 0; v < 3; ++v) {
            towers.push_back(buildPolyZTower(GroupSpec::makeFreeAbelian(1, "Z", {"t"}), q));
            spec.vertexRings.push_back(towers.back().tower);
        }
        spec.edges = {{0, 1, true}, {1, 2, true}, {0, 2, false}};
        spec.baseVertex = 0;
        spec.validate();
        std::mt19937 rng(57);
        for (int trial = 0; trial < 100; ++trial) {
            RingWord loop;
            int cur = 0;
            int steps = 1 + int(rng() % 6);
            for (int i = 0; i < steps; ++i) {
                if (rng() % 2) {
                    auto e = TowerElem::generatorElem(spec.vertexRings[cur], 0)
                                 .pow(long(rng() % 3) - 1);
                    if (rng() % 2)
                        e = e + TowerElem::one(spec.vertexRings[cur]);
                    loop.push_back({false, cur, e, -1, 0});
                }
                std::vector<std::pair<int, int>> moves;
                for (size_t e = 0; e < spec.edges.size(); ++e) {
                    if (spec.edges[e].from == cur)
                        moves.push_back({int(e), 1});
                    if (spec.edges[e].to == cur)
                        moves.push_back({int(e), -1});
                }
                auto mv = moves[rng() % moves.size()];
                loop.push_back({true, -1, TowerElem(), mv.first, mv.second});
                cur = mv.second > 0 ? spec.edges[mv.first].to : spec.edges[mv.first].from;
            }
            auto path = spec.treePath(cur);
            for (auto it = path.rbegin(); it != path.rend(); ++it)
                loop.push_back({true, -1, TowerElem(), it->first, -it->second});
            auto tb = translateToTreeBased(spec, loop);
            auto back = translateToBaseVertex(spec, tb);
            if (!ringWordEqual(back, normalizeRingWord(spec, loop)) ||
                !ringWordEqual(translateToTreeBased(spec, back), tb)) {
                detail = "round trip failed at trial " + std::to_string(trial);
                return false;
            }
        }
        auto fuzz = embedInjectivityFuzz(q, 100, 42);
        if (!fuzz.allNonzero) {
            detail = "kernel element: " + fuzz.kernelWitness;
            return false;
        }
        detail = "127 basis words through degree 6; 100 round trips; 100 fuzz images nonzero";
        return true;
    });

    criterion(9, "oracle equivalences", 300, [&](std::string &detail) {
        // (a) Ore arithmetic over trivial-sigma Q(t) vs commutative oracle
        auto T = buildPolyZTower(GroupSpec::makeFreeAbelian(1, "Z", {"t"}), q).tower;
        std::mt19937 rng(314159);
        for (int trial = 0; trial < 500; ++trial) {
            auto f = TowerElem::fromFraction(
                T, OreFraction::make(randomPoly(rng, T, 3, true), randomPoly(rng, T, 3, false)));
            auto g = TowerElem::fromFraction(
                T, OreFraction::make(randomPoly(rng, T, 3, true), randomPoly(rng, T, 3, false)));
            RatFunc rf = toOracle(f), rg = toOracle(g);
            bool ok = rfEqual(toOracle(f + g), {lpAdd(lpMul(rf.num, rg.den), lpMul(rg.num, rf.den)),
                                               lpMul(rf.den, rg.den)}) &&
                      rfEqual(toOracle(f * g), {lpMul(rf.num, rg.num), lpMul(rf.den, rg.den)});
            if (ok && !g.isZero())
                ok = rfEqual(toOracle(f * g.inverse()),
                             {lpMul(rf.num, rg.den), lpMul(rf.den, rg.num)});
            if (!ok) {
                detail = "oracle mismatch at trial " + std::to_string(trial);
                return false;
            }
        }
        // (b) series inverse of 1 - x, multiplied back through order 3
        auto F2 = GroupSpec::makeFree(2, "F2", {"x", "y"});
        auto one = GroupAlgebraElement::one(F2, q);
        auto x = GroupAlgebraElement::monomial(normalForm(F2, {1}), Scalar::one(q));
        auto y = GroupAlgebraElement::monomial(normalForm(F2, {2}), Scalar::one(q));
        auto inv = mnInverse(one - x, 3);
        if (truncateToLength(seriesMul(one - x, inv.terms, 3), 3) != one) {
            detail = "mn inverse of 1 - x fails the order-3 product check";
            return false;
        }
        // (c) series rank of (x - 1, y - 1) stabilizes to 1 by order 2
        std::vector<std::vector<GroupAlgebraElement>> M = {{x - one, y - one}};
        auto r1 = mnRank(M, 1);
        auto r2 = mnRank(M, 2);
        if (r2.lowerBound != 1 || !r2.stabilized || r1.lowerBound != 1) {
            detail = "mn rank: got " + std::to_string(r2.lowerBound) +
                     (r2.stabilized ? " (stabilized)" : " (not stabilized)");
            return false;
        }
        detail = "500 oracle instances; (1-x)^-1 certified at order 3; rank stable at order 2";
        return true;
    });

    std::printf("%s: %d of 9 criteria passed\n", failures ? "FAILURE" : "SUCCESS", 9 - failures);
    return failures ? 1 : 0;
}
