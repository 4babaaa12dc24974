#pragma once

#include "skewlab/rank.hpp"

namespace skewlab {

// One Betti number; `exact` is false when it rests on a non-stabilized
// truncated rank (then the value is an upper bound only).
struct BettiValue {
    int value = 0;
    bool exact = true;
    std::string annotation;
};

struct BettiReport {
    std::string groupName, towerDesc;
    std::vector<BettiValue> betti;
    int euler = 0;     // alternating sum of the Betti numbers
    bool exact = true; // all entries exact
};

// b_p = dims[p] - rank(d_p) - rank(d_{p+1}) over a division-ring tower; the
// embedding maps complex entries into the tower.
BettiReport betti(const ChainComplex &cx, const TowerPtr &tower,
                  const std::function<TowerElem(const GroupAlgebraElement &)> &embed);

// Convenience wrapper for the iterated Ore tower of a poly-Z group.
BettiReport bettiOverPolyZ(const ChainComplex &cx, const PolyZTower &pt);

// The same computation over the truncated-series model of the free-group
// division ring; non-stabilized ranks mark the affected values inexact.
BettiReport bettiMN(const ChainComplex &cx, int order);

// Checks euler == alternating sum of module ranks.  Inexact Betti values
// make the check inconclusive (returns false with a telling detail).
bool eulerCheck(const BettiReport &rep, const std::vector<int> &dims, std::string *detail = nullptr);

// Betti numbers of a group from its presentation complex, routed to the
// appropriate division-ring model (series model for free groups, Ore tower
// for free-abelian / poly-Z).
BettiReport bettiForGroup(const GroupSpecPtr &spec, FieldKind field, int mnOrder = 4);

// Finite-index scaling: index * b_p(G) = b_p(H) for the subgroup generated
// by hGens, whose isomorphism type is supplied by the caller as hSpec (for
// free ambients the Nielsen-Schreier rank is cross-checked against it).
struct ScalingReport {
    bool passed = false;
    int index = 0;
    BettiReport ambient, subgroup;
    std::string detail;
};
ScalingReport scalingCheck(const GroupSpecPtr &G, const std::vector<GroupElement> &hGens,
                           const GroupSpecPtr &hSpec, FieldKind field, int mnOrder = 4);

// Kaplansky zerodivisor scan over k[G]: pairs of nonzero elements with
// support inside the word-length ball of radius supportBound and
// coefficients drawn from coeffSample.  Exhaustive mode refuses estimated
// > 10^8 products; the report carries the seed and the enumeration-order
// version for bit-reproducibility.
struct ScanReport {
    std::string mode;          // "exhaustive" or "random"
    std::string enumOrder;     // enumeration-order version tag
    unsigned seed = 0;         // random mode only
    long long pairsTested = 0;
    bool refused = false;
    bool found = false;
    std::string factorA, factorB; // certificate when found
    std::string detail;
};
ScanReport zeroDivisorScan(const GroupSpecPtr &spec, FieldKind field, int supportBound,
                           const std::vector<long> &coeffSample, bool exhaustive,
                           unsigned seed = 0, long long randomTrials = 0);

} // namespace skewlab
