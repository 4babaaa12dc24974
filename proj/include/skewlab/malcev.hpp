#pragma once

#include "skewlab/algebra.hpp"

namespace skewlab {

// Compares two free-group elements in the Magnus bi-order: expand each as a
// noncommutative power series via x_i -> 1 + X_i and compare coefficient
// sequences, monomials ordered by total degree then lexicographically.
// Returns <0, 0, >0.
int magnusCompare(const GroupElement &g, const GroupElement &h);

// Lowest positive degree of mu(g) - 1 (0 for the identity).
int magnusDegree(const GroupElement &g);

// A truncated series over the bi-ordered free group: finitely many terms,
// every support element of word length <= order.  (Word length is the
// truncation filtration; see README for why, and note that a * inverse is
// certified by an explicit multiply-back check, not by fiat.)
struct MNSeries {
    GroupAlgebraElement terms;
    int order = 0;

    bool isZero() const { return terms.isZero(); }
    // Support element least in the bi-order; throws on the zero series.
    GroupElement minimalTerm() const;
    std::string str() const;
};

// Drops terms whose support word is longer than `order`.
GroupAlgebraElement truncateToLength(const GroupAlgebraElement &a, int order);
// Product truncated to the given order.
GroupAlgebraElement seriesMul(const GroupAlgebraElement &a, const GroupAlgebraElement &b,
                              int order);

// Inverse of a nonzero group-algebra element as a truncated series:
// a = c g_min (1 + eps) with eps entirely above 1 in the bi-order, then the
// geometric series for (1 + eps)^-1.  Certification: internally the series
// is computed at a higher working length W and a * S_W is checked to be 1
// through length `order`; consequently a * result - 1 is supported on words
// longer than order - L, where L is the longest support word of a (for
// supports of positive letters the product truncates to exactly 1).
// Failure to certify raises ResourceExceededError rather than returning an
// unchecked series.
MNSeries mnInverse(const GroupAlgebraElement &a, int order);

// Series Gaussian elimination: a certified lower bound for the rank over
// the division closure, with a flag telling whether the pivot structure
// agrees between orders N-1 and N.
struct MnRankResult {
    int lowerBound = 0;
    bool stabilized = false;
};
MnRankResult mnRank(const std::vector<std::vector<GroupAlgebraElement>> &M, int order);

} // namespace skewlab
