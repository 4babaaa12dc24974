#include "skewlab/malcev.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <gmpxx.h>

namespace skewlab {

namespace {

void checkFreeSpec(const GroupSpecPtr &spec)
{
    if (!spec || spec->kind != GroupKind::Free)
        throw InputError("series arithmetic is defined over free groups only");
}

int wordLength(const GroupElement &g) { return static_cast<int>(g.freeWord().size()); }

// Monomials of the noncommutative expansion: sequences of 0-based variable
// indices, ordered by total degree then lexicographically.
struct MonoLess {
    bool operator()(const std::vector<int> &a, const std::vector<int> &b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};
using NCPoly = std::map<std::vector<int>, mpz_class, MonoLess>;

// Right-multiplies p by (1 + X_v)^sign, truncated at total degree <= cap.
NCPoly mulByLetter(const NCPoly &p, int v, int sign, int cap)
{
    NCPoly out;
    auto add = [&](std::vector<int> mono, const mpz_class &c) {
        if (static_cast<int>(mono.size()) > cap || c == 0)
            return;
        auto [it, fresh] = out.emplace(std::move(mono), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                out.erase(it);
        }
    };
    for (const auto &[mono, c] : p) {
        if (sign > 0) {
            add(mono, c);
            std::vector<int> m = mono;
            m.push_back(v);
            add(std::move(m), c);
        } else {
            // (1 + X)^-1 = sum (-1)^k X^k
            mpz_class a = c;
            std::vector<int> m = mono;
            for (int k = 0; static_cast<int>(m.size()) <= cap; ++k) {
                add(m, a);
                m.push_back(v);
                a = -a;
            }
        }
    }
    return out;
}

NCPoly magnusExpand(const GroupElement &g, int cap)
{
    NCPoly p;
    p[{}] = 1;
    for (int l : g.freeWord())
        p = mulByLetter(p, std::abs(l) - 1, l > 0 ? 1 : -1, cap);
    return p;
}

GroupAlgebraElement gaOne(const GroupAlgebraElement &like)
{
    return GroupAlgebraElement::one(like.spec(), like.field());
}

} // namespace

int magnusCompare(const GroupElement &g, const GroupElement &h)
{
    checkFreeSpec(g.spec());
    if (g.spec() != h.spec())
        throw MismatchError("elements live in different groups");
    if (g == h)
        return 0;
    int cap = wordLength(g) + wordLength(h);
    NCPoly pg = magnusExpand(g, cap), ph = magnusExpand(h, cap);
    // First differing coefficient in (degree, lex) order decides.
    auto ig = pg.begin(), ih = ph.begin();
    MonoLess less;
    while (ig != pg.end() || ih != ph.end()) {
        if (ih == ph.end() || (ig != pg.end() && less(ig->first, ih->first))) {
            return ig->second > 0 ? 1 : -1; // h has coefficient 0 here
        }
        if (ig == pg.end() || less(ih->first, ig->first)) {
            return ih->second > 0 ? -1 : 1;
        }
        if (ig->second != ih->second)
            return ig->second < ih->second ? -1 : 1;
        ++ig;
        ++ih;
    }
    throw Error("expansions agree to degree " + std::to_string(cap) +
                " for distinct elements");
}

int magnusDegree(const GroupElement &g)
{
    checkFreeSpec(g.spec());
    if (g.isIdentity())
        return 0;
    NCPoly p = magnusExpand(g, wordLength(g));
    for (const auto &[mono, c] : p)
        if (!mono.empty())
            return static_cast<int>(mono.size());
    throw Error("no nonconstant term found for a nontrivial element");
}

GroupAlgebraElement truncateToLength(const GroupAlgebraElement &a, int order)
{
    checkFreeSpec(a.spec());
    GroupAlgebraElement out(a.spec(), a.field());
    for (const auto &[g, c] : a.terms())
        if (wordLength(g) <= order)
            out.addTerm(g, c);
    return out;
}

GroupAlgebraElement seriesMul(const GroupAlgebraElement &a, const GroupAlgebraElement &b,
                              int order)
{
    return truncateToLength(a * b, order);
}

GroupElement MNSeries::minimalTerm() const
{
    if (terms.isZero())
        throw InputError("zero series has no minimal term");
    GroupElement best = terms.terms().front().first;
    for (const auto &[g, c] : terms.terms())
        if (magnusCompare(g, best) < 0)
            best = g;
    return best;
}

std::string MNSeries::str() const
{
    std::ostringstream os;
    os << terms.str() << " + O(len>" << order << ")";
    return os.str();
}

namespace {

// Geometric-series inverse at the given working length, no certification.
GroupAlgebraElement geometricInverse(const GroupAlgebraElement &a, int working)
{
    if (a.isZero())
        throw DivisionByZeroError("inverse of the zero element");
    // a = c * gmin * (1 + eps) with gmin least in the bi-order, so every
    // term of eps lies strictly above 1 and the geometric series applies.
    GroupElement gmin = a.terms().front().first;
    for (const auto &[g, c] : a.terms())
        if (magnusCompare(g, gmin) < 0)
            gmin = g;
    Scalar c = a.coefficient(gmin);

    GroupAlgebraElement one = gaOne(a);
    GroupAlgebraElement eps = a.translate(inverse(gmin)).scale(c.inverse()) - one;
    for (const auto &[g, co] : eps.terms())
        if (magnusCompare(g, identity(a.spec())) <= 0)
            throw Error("factored remainder is not positive in the bi-order");

    GroupAlgebraElement sum = one, pw = one;
    GroupAlgebraElement negEps = -eps;
    int cap = 8 * working + 32;
    int k = 0;
    for (; k < cap; ++k) {
        pw = seriesMul(pw, negEps, working);
        if (pw.isZero())
            break;
        sum = sum + pw;
    }
    if (k == cap)
        throw ResourceExceededError("geometric series did not terminate",
                                    std::to_string(cap) + " iterations at length " +
                                        std::to_string(working));
    return truncateToLength(
        sum * GroupAlgebraElement::monomial(inverse(gmin), c.inverse()), working);
}

} // namespace

MNSeries mnInverse(const GroupAlgebraElement &a, int order)
{
    checkFreeSpec(a.spec());
    if (order < 1)
        throw InputError("truncation order must be at least 1");
    if (a.isZero())
        throw DivisionByZeroError("inverse of the zero element");

    int maxLen = 0;
    for (const auto &[g, co] : a.terms())
        maxLen = std::max(maxLen, wordLength(g));
    int working = order + 2 * maxLen + 2;

    GroupAlgebraElement one = gaOne(a);
    GroupAlgebraElement invFull = geometricInverse(a, working);

    // Certify at working precision: a * invFull must be 1 through length
    // `order`; the returned truncation then satisfies a * result = 1 up to
    // terms longer than order - maxLen (boundary effect of truncating).
    if (truncateToLength(a * invFull, order) != one)
        throw ResourceExceededError("inverse could not be certified",
                                    "working truncation length " + std::to_string(working));
    GroupAlgebraElement invN = truncateToLength(invFull, order);
    GroupAlgebraElement boundary = a * invN - one;
    for (const auto &[g, co] : boundary.terms())
        if (wordLength(g) <= order - maxLen)
            throw Error("multiply-back residue below the certified boundary");
    return MNSeries{invN, order};
}

namespace {

// Inverse of a truncated entry at the given order; order 0 falls back to the
// constant coefficient.  Uses the uncertified geometric inverse at the bare
// order: elimination results are flagged lower bounds, and the extra
// certification buffer explodes on fat post-elimination entries.
GroupAlgebraElement entryInverse(const GroupAlgebraElement &e, int order)
{
    if (order == 0) {
        Scalar c = e.coefficient(identity(e.spec()));
        if (c.isZero())
            throw DivisionByZeroError("entry has no constant term at order 0");
        return GroupAlgebraElement::monomial(identity(e.spec()), c.inverse());
    }
    return geometricInverse(e, order);
}

// One truncated Gaussian elimination pass; returns the pivot positions.
std::vector<std::pair<int, int>> pivotsAtOrder(const GAMatrix &M, int order)
{
    int rows = static_cast<int>(M.size());
    int cols = rows ? static_cast<int>(M[0].size()) : 0;
    GAMatrix w(rows);
    for (int i = 0; i < rows; ++i) {
        w[i].reserve(cols);
        for (int j = 0; j < cols; ++j)
            w[i].push_back(truncateToLength(M[i][j], order));
    }
    std::vector<bool> used(rows, false);
    std::vector<std::pair<int, int>> pivots;
    for (int col = 0; col < cols; ++col) {
        // candidates sorted so the entry with the bi-order-least leading
        // term is tried first
        std::vector<int> cand;
        for (int r = 0; r < rows; ++r)
            if (!used[r] && !w[r][col].isZero())
                cand.push_back(r);
        if (cand.empty())
            continue;
        std::sort(cand.begin(), cand.end(), [&](int x, int y) {
            return magnusCompare(MNSeries{w[x][col], order}.minimalTerm(),
                                 MNSeries{w[y][col], order}.minimalTerm()) < 0;
        });
        int piv = -1;
        GroupAlgebraElement inv;
        std::optional<ResourceExceededError> firstErr;
        for (int r : cand) {
            try {
                inv = entryInverse(w[r][col], order);
                piv = r;
                break;
            } catch (const ResourceExceededError &e) {
                if (!firstErr)
                    firstErr = e;
            }
        }
        if (piv < 0)
            throw *firstErr;
        used[piv] = true;
        pivots.emplace_back(piv, col);
        for (int r = 0; r < rows; ++r) {
            if (r == piv || used[r] || w[r][col].isZero())
                continue;
            GroupAlgebraElement f = seriesMul(w[r][col], inv, order);
            for (int j = 0; j < cols; ++j)
                w[r][j] = w[r][j] - seriesMul(f, w[piv][j], order);
            // exact modulo the truncation boundary
            w[r][col] = GroupAlgebraElement::zero(M[0][0].spec(), M[0][0].field());
        }
    }
    return pivots;
}

} // namespace

MnRankResult mnRank(const std::vector<std::vector<GroupAlgebraElement>> &M, int order)
{
    if (order < 1)
        throw InputError("truncation order must be at least 1");
    if (M.empty() || M[0].empty())
        return {0, true};
    checkFreeSpec(M[0][0].spec());
    for (const auto &row : M)
        if (row.size() != M[0].size())
            throw InputError("matrix rows have unequal lengths");
    auto prev = pivotsAtOrder(M, order - 1);
    auto cur = pivotsAtOrder(M, order);
    return {static_cast<int>(cur.size()), prev == cur};
}

} // namespace skewlab
