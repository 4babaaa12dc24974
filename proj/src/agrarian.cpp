#include "skewlab/agrarian.hpp"
#include "skewlab/malcev.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace skewlab {

namespace {

struct ElemLess {
    bool operator()(const GroupElement &a, const GroupElement &b) const
    {
        return a.compare(b) < 0;
    }
};

// Generator elements (with inverses) used to grow word-length balls.
std::vector<GroupElement> ballSteps(const GroupSpecPtr &spec)
{
    std::vector<GroupElement> steps;
    switch (spec->kind) {
    case GroupKind::Free:
    case GroupKind::FreeAbelian:
    case GroupKind::PolyZ:
        for (int i = 1; i <= spec->rank(); ++i) {
            steps.push_back(normalForm(spec, {i}));
            steps.push_back(normalForm(spec, {-i}));
        }
        break;
    case GroupKind::FiniteExtension: {
        const auto &fe = *spec->finiteExt;
        for (int i = 1; i <= fe.normal->rank(); ++i) {
            steps.push_back(makeExtensionElement(spec, normalForm(fe.normal, {i}), 0));
            steps.push_back(makeExtensionElement(spec, normalForm(fe.normal, {-i}), 0));
        }
        for (int q = 1; q < static_cast<int>(fe.qInv.size()); ++q)
            steps.push_back(makeExtensionElement(spec, identity(fe.normal), q));
        break;
    }
    default:
        throw UnsupportedError("ball enumeration not available for this group class");
    }
    return steps;
}

std::vector<GroupElement> ball(const GroupSpecPtr &spec, int radius)
{
    auto steps = ballSteps(spec);
    std::set<GroupElement, ElemLess> seen;
    std::vector<GroupElement> frontier = {identity(spec)};
    seen.insert(frontier[0]);
    for (int r = 0; r < radius; ++r) {
        std::vector<GroupElement> next;
        for (const auto &g : frontier)
            for (const auto &s : steps) {
                GroupElement h = multiply(g, s);
                if (seen.insert(h).second)
                    next.push_back(h);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

int rankOfDifferential(const ChainComplex &cx, int p, const TowerPtr &tower,
                       const std::function<TowerElem(const GroupAlgebraElement &)> &embed)
{
    if (p < 1 || p > cx.length())
        return 0;
    const GAMatrix &d = cx.differentials[p - 1];
    TowerMatrix M(d.size());
    for (size_t i = 0; i < d.size(); ++i) {
        M[i].reserve(d[i].size());
        for (const auto &e : d[i])
            M[i].push_back(embed(e));
    }
    return towerMatrixRank(M);
}

} // namespace

BettiReport betti(const ChainComplex &cx, const TowerPtr &tower,
                  const std::function<TowerElem(const GroupAlgebraElement &)> &embed)
{
    cx.verify();
    BettiReport rep;
    rep.groupName = cx.spec ? cx.spec->name : "";
    rep.towerDesc = tower->describe();
    int len = cx.length();
    std::vector<int> ranks(len + 2, 0);
    for (int p = 1; p <= len; ++p)
        ranks[p] = rankOfDifferential(cx, p, tower, embed);
    int sign = 1;
    for (int p = 0; p <= len; ++p) {
        int b = cx.dims[p] - ranks[p] - ranks[p + 1];
        if (b < 0)
            throw Error("negative Betti number - rank computation inconsistent");
        rep.betti.push_back({b, true, ""});
        rep.euler += sign * b;
        sign = -sign;
    }
    return rep;
}

BettiReport bettiOverPolyZ(const ChainComplex &cx, const PolyZTower &pt)
{
    if (cx.spec != pt.group)
        throw MismatchError("complex and tower are over different groups");
    return betti(cx, pt.tower,
                 [&pt](const GroupAlgebraElement &a) { return pt.embedAlgebra(a); });
}

BettiReport bettiMN(const ChainComplex &cx, int order)
{
    cx.verify();
    BettiReport rep;
    rep.groupName = cx.spec ? cx.spec->name : "";
    rep.towerDesc = "truncated series model of the free-group division ring, order " +
                    std::to_string(order);
    int len = cx.length();
    std::vector<MnRankResult> ranks(len + 2, MnRankResult{0, true});
    for (int p = 1; p <= len; ++p)
        ranks[p] = mnRank(cx.differentials[p - 1], order);
    int sign = 1;
    for (int p = 0; p <= len; ++p) {
        BettiValue v;
        // ranks are certified lower bounds, so b is an upper bound until
        // both neighbouring ranks stabilize
        v.value = cx.dims[p] - ranks[p].lowerBound - ranks[p + 1].lowerBound;
        v.exact = ranks[p].stabilized && ranks[p + 1].stabilized;
        if (!v.exact) {
            v.annotation = "upper bound only (series rank not stabilized at order " +
                           std::to_string(order) + ")";
            rep.exact = false;
        }
        if (v.value < 0)
            throw Error("negative Betti number - rank computation inconsistent");
        rep.betti.push_back(v);
        rep.euler += sign * v.value;
        sign = -sign;
    }
    return rep;
}

bool eulerCheck(const BettiReport &rep, const std::vector<int> &dims, std::string *detail)
{
    if (!rep.exact) {
        if (detail)
            *detail = "inconclusive: some Betti values are upper bounds only";
        return false;
    }
    int chi = 0, sign = 1;
    for (int d : dims) {
        chi += sign * d;
        sign = -sign;
    }
    if (detail) {
        std::ostringstream os;
        os << "alternating Betti sum " << rep.euler << " vs complex Euler characteristic "
           << chi;
        *detail = os.str();
    }
    return chi == rep.euler;
}

BettiReport bettiForGroup(const GroupSpecPtr &spec, FieldKind field, int mnOrder)
{
    ChainComplex cx = foxComplex(spec, field);
    switch (spec->kind) {
    case GroupKind::Free:
        return bettiMN(cx, mnOrder);
    case GroupKind::FreeAbelian:
    case GroupKind::PolyZ:
        return bettiOverPolyZ(cx, buildPolyZTower(spec, field));
    default:
        throw UnsupportedError("no division-ring model for this group class here");
    }
}

ScalingReport scalingCheck(const GroupSpecPtr &G, const std::vector<GroupElement> &hGens,
                           const GroupSpecPtr &hSpec, FieldKind field, int mnOrder)
{
    ScalingReport rep;
    SubgroupData sub = finiteIndexData(G, hGens);
    rep.index = sub.index;
    if (G->kind == GroupKind::Free) {
        if (hSpec->kind != GroupKind::Free || !sub.subgroupFreeRank ||
            *sub.subgroupFreeRank != hSpec->rank())
            throw MismatchError("subgroup model does not match the Schreier rank " +
                                std::to_string(sub.subgroupFreeRank.value_or(-1)));
    }
    rep.ambient = bettiForGroup(G, field, mnOrder);
    rep.subgroup = bettiForGroup(hSpec, field, mnOrder);
    if (!rep.ambient.exact || !rep.subgroup.exact) {
        rep.passed = false;
        rep.detail = "inconclusive: non-stabilized ranks involved";
        return rep;
    }
    size_t n = std::max(rep.ambient.betti.size(), rep.subgroup.betti.size());
    rep.passed = true;
    std::ostringstream os;
    for (size_t p = 0; p < n; ++p) {
        int bg = p < rep.ambient.betti.size() ? rep.ambient.betti[p].value : 0;
        int bh = p < rep.subgroup.betti.size() ? rep.subgroup.betti[p].value : 0;
        if (rep.index * bg != bh)
            rep.passed = false;
        os << (p ? "; " : "") << "p=" << p << ": " << rep.index << "*" << bg
           << (rep.index * bg == bh ? " = " : " != ") << bh;
    }
    rep.detail = os.str();
    return rep;
}

ScanReport zeroDivisorScan(const GroupSpecPtr &spec, FieldKind field, int supportBound,
                           const std::vector<long> &coeffSample, bool exhaustive,
                           unsigned seed, long long randomTrials)
{
    if (supportBound < 1)
        throw InputError("support bound must be at least 1");
    std::vector<Scalar> coeffs;
    for (long c : coeffSample) {
        Scalar s = Scalar::fromInt(field, c);
        if (!s.isZero())
            coeffs.push_back(s);
    }
    if (coeffs.empty())
        throw InputError("coefficient sample contains no nonzero values");

    ScanReport rep;
    rep.mode = exhaustive ? "exhaustive" : "random";
    rep.enumOrder = "ball-lex-v1";
    rep.seed = seed;

    std::vector<GroupElement> univ = ball(spec, supportBound);
    long long B = static_cast<long long>(univ.size());
    long long C = static_cast<long long>(coeffs.size());

    auto recordHit = [&](const GroupAlgebraElement &a, const GroupAlgebraElement &b) {
        rep.found = true;
        rep.factorA = a.str();
        rep.factorB = b.str();
        rep.detail = "zero product: (" + rep.factorA + ") * (" + rep.factorB + ")";
    };

    if (exhaustive) {
        // count elements: sum over support size k of C(B,k) * C^k
        long long count = 0, choose = 1;
        for (int k = 1; k <= supportBound && k <= B; ++k) {
            choose = choose * (B - k + 1) / k;
            long long t = choose;
            bool over = false;
            for (int i = 0; i < k && !over; ++i) {
                t *= C;
                over = t > (long long)1e9;
            }
            count += over ? (long long)1e9 : t;
            if (count > (long long)1e9)
                break;
        }
        if (count > 10000) { // count^2 products would exceed 10^8
            rep.refused = true;
            rep.detail = "refused: estimated " + std::to_string(count) +
                         "^2 > 10^8 products";
            return rep;
        }

        // materialize all nonzero elements with support size 1..bound
        std::vector<GroupAlgebraElement> els;
        std::vector<int> idx;
        std::function<void(int, int)> rec = [&](int start, int remaining) {
            if (!idx.empty()) {
                std::vector<int> cc(idx.size(), 0);
                for (;;) {
                    GroupAlgebraElement e(spec, field);
                    for (size_t i = 0; i < idx.size(); ++i)
                        e.addTerm(univ[idx[i]], coeffs[cc[i]]);
                    els.push_back(std::move(e));
                    size_t pos = 0;
                    while (pos < cc.size() && ++cc[pos] == (int)coeffs.size()) {
                        cc[pos] = 0;
                        ++pos;
                    }
                    if (pos == cc.size())
                        break;
                }
            }
            if (remaining == 0)
                return;
            for (int i = start; i < (int)univ.size(); ++i) {
                idx.push_back(i);
                rec(i + 1, remaining - 1);
                idx.pop_back();
            }
        };
        rec(0, supportBound);

        for (const auto &a : els) {
            for (const auto &b : els) {
                ++rep.pairsTested;
                if ((a * b).isZero()) {
                    recordHit(a, b);
                    return rep;
                }
            }
        }
        rep.detail = "no zero divisors among " + std::to_string(rep.pairsTested) +
                     " products (" + std::to_string(els.size()) + " elements)";
        return rep;
    }

    std::mt19937 rng(seed);
    auto randomElem = [&]() {
        for (;;) {
            GroupAlgebraElement e(spec, field);
            int k = 1 + static_cast<int>(rng() % supportBound);
            for (int i = 0; i < k; ++i)
                e.addTerm(univ[rng() % univ.size()], coeffs[rng() % coeffs.size()]);
            if (!e.isZero())
                return e;
        }
    };
    for (long long t = 0; t < randomTrials; ++t) {
        GroupAlgebraElement a = randomElem(), b = randomElem();
        ++rep.pairsTested;
        if ((a * b).isZero()) {
            recordHit(a, b);
            return rep;
        }
    }
    rep.detail = "no zero divisors in " + std::to_string(rep.pairsTested) +
                 " random products";
    return rep;
}

} // namespace skewlab
