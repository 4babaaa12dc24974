#include "skewlab/graphrings.hpp"
#include "skewlab/algebra.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace skewlab {

// --------------------------- based rings -----------------------------------

BRElem brAdd(const BRElem &a, const BRElem &b)
{
    BRElem out = a;
    for (const auto &[i, c] : b) {
        auto it = out.find(i);
        if (it == out.end()) {
            out.emplace(i, c);
        } else {
            it->second = it->second + c;
            if (it->second.isZero())
                out.erase(it);
        }
    }
    return out;
}

BRElem brScale(const BRElem &a, const Scalar &c)
{
    BRElem out;
    if (c.isZero())
        return out;
    for (const auto &[i, x] : a)
        out.emplace(i, x * c);
    return out;
}

BRElem brMul(const BasedRing &r, const BRElem &a, const BRElem &b)
{
    BRElem out;
    for (const auto &[i, ci] : a)
        for (const auto &[j, cj] : b)
            out = brAdd(out, brScale(r.mulBasis(i, j), ci * cj));
    return out;
}

// ----------------------------- coproduct -----------------------------------

namespace {

void coprodAddTerm(CoprodElem &e, const CoprodWord &w, const Scalar &c)
{
    if (c.isZero())
        return;
    auto it = e.terms.find(w);
    if (it == e.terms.end()) {
        e.terms.emplace(w, c);
    } else {
        it->second = it->second + c;
        if (it->second.isZero())
            e.terms.erase(it);
    }
}

// product of two basis words, collecting across same-side collisions
void mulWords(const BasedRing &b, const BasedRing &c, const CoprodWord &w1,
              const CoprodWord &w2, const Scalar &coeff, CoprodElem &acc)
{
    if (w1.empty() || w2.empty() || w1.back().first != w2.front().first) {
        CoprodWord w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        coprodAddTerm(acc, w, coeff);
        return;
    }
    int side = w1.back().first;
    const BasedRing &r = side == 0 ? b : c;
    BRElem prod = r.mulBasis(w1.back().second, w2.front().second);
    CoprodWord left(w1.begin(), w1.end() - 1);
    CoprodWord right(w2.begin() + 1, w2.end());
    for (const auto &[i, ci] : prod) {
        if (i == 0) {
            // identity component: neighbours become adjacent, recurse
            mulWords(b, c, left, right, coeff * ci, acc);
        } else {
            CoprodWord w = left;
            w.emplace_back(side, i);
            w.insert(w.end(), right.begin(), right.end());
            coprodAddTerm(acc, w, coeff * ci);
        }
    }
}

} // namespace

CoprodElem coprodZero() { return {}; }

CoprodElem coprodScalar(const BasedRing &b, const Scalar &s)
{
    CoprodElem e;
    coprodAddTerm(e, {}, s);
    return e;
}

CoprodElem coprodInject(int side, const BRElem &x)
{
    CoprodElem e;
    for (const auto &[i, c] : x) {
        if (i == 0)
            coprodAddTerm(e, {}, c);
        else
            coprodAddTerm(e, {{side, i}}, c);
    }
    return e;
}

CoprodElem coprodAdd(const CoprodElem &x, const CoprodElem &y, const BasedRing &,
                     const BasedRing &)
{
    CoprodElem out = x;
    for (const auto &[w, c] : y.terms)
        coprodAddTerm(out, w, c);
    return out;
}

CoprodElem coprodMul(const CoprodElem &x, const CoprodElem &y, const BasedRing &b,
                     const BasedRing &c)
{
    CoprodElem out;
    for (const auto &[w1, c1] : x.terms)
        for (const auto &[w2, c2] : y.terms)
            mulWords(b, c, w1, w2, c1 * c2, out);
    return out;
}

CoprodElem coprodEval(const BasedRing &b, const BasedRing &c,
                      const std::vector<std::vector<std::pair<int, BRElem>>> &summands)
{
    CoprodElem total;
    for (const auto &factors : summands) {
        CoprodElem prod = coprodScalar(b, Scalar::one(b.field));
        for (const auto &[side, x] : factors)
            prod = coprodMul(prod, coprodInject(side, x), b, c);
        total = coprodAdd(total, prod, b, c);
    }
    return total;
}

std::string CoprodElem::str(const BasedRing &b, const BasedRing &c) const
{
    if (terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[w, coeff] : terms) {
        if (!first)
            os << " + ";
        first = false;
        os << coeff.str();
        for (const auto &[side, i] : w)
            os << "*" << (side == 0 ? b.basisName(i) : c.basisName(i));
    }
    return os.str();
}

std::vector<CoprodWord> coprodBasisWords(const BasedRing &b, const BasedRing &c, int maxDeg)
{
    // length-first then lexicographic by (side, index): generate by total
    // degree and collect sorted
    std::vector<CoprodWord> out = {{}};
    std::vector<CoprodWord> frontier = {{}};
    // grow words letter by letter; a letter must switch sides
    for (;;) {
        std::vector<CoprodWord> next;
        for (const auto &w : frontier) {
            int deg = 0;
            for (const auto &[side, i] : w)
                deg += (side == 0 ? b.degreeOf(i) : c.degreeOf(i));
            for (int side = 0; side < 2; ++side) {
                if (!w.empty() && w.back().first == side)
                    continue;
                const BasedRing &r = side == 0 ? b : c;
                for (int d = 1; d + deg <= maxDeg; ++d)
                    for (int idx : r.indicesOfDegree(d)) {
                        CoprodWord w2 = w;
                        w2.emplace_back(side, idx);
                        next.push_back(std::move(w2));
                    }
            }
        }
        if (next.empty())
            break;
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const CoprodWord &x, const CoprodWord &y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x < y;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --------------------------- degenerate HNN --------------------------------

std::map<int, BRElem> hnnDegenerateNormalForm(const BasedRing &b,
                                              const std::vector<HnnLetter> &word)
{
    // both edge maps are the identity, so t commutes with the whole ring:
    // collect the ring letters and the total t-power
    BRElem coeff{{0, Scalar::one(b.field)}};
    int power = 0;
    for (const auto &l : word) {
        if (l.isStable)
            power += l.power;
        else
            coeff = brMul(b, coeff, l.coeff);
    }
    std::map<int, BRElem> out;
    if (!coeff.empty())
        out.emplace(power, std::move(coeff));
    return out;
}

// --------------------------- graph of rings --------------------------------

void GraphOfRingsSpec::validate() const
{
    int n = static_cast<int>(vertexRings.size());
    if (n == 0)
        throw InputError("graph has no vertices");
    if (baseVertex < 0 || baseVertex >= n)
        throw InputError("base vertex out of range");
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i)
        parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    int treeEdges = 0;
    for (const auto &e : edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw InputError("edge endpoint out of range");
        if (e.inTree) {
            ++treeEdges;
            int a = find(e.from), b = find(e.to);
            if (a == b)
                throw InputError("tree edges contain a cycle");
            parent[a] = b;
        }
    }
    if (treeEdges != n - 1)
        throw InputError("spanning tree must have exactly vertices-1 edges");
    for (int i = 0; i < n; ++i)
        if (find(i) != find(baseVertex))
            throw InputError("spanning tree does not span");
}

std::vector<std::pair<int, int>> GraphOfRingsSpec::treePath(int v) const
{
    int n = static_cast<int>(vertexRings.size());
    // BFS over tree edges from the base vertex
    std::vector<int> prevVertex(n, -1), prevEdge(n, -1), prevSign(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<int> queue = {baseVertex};
    seen[baseVertex] = true;
    for (size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (size_t ei = 0; ei < edges.size(); ++ei) {
            const auto &e = edges[ei];
            if (!e.inTree)
                continue;
            int w = -1, sign = 0;
            if (e.from == u) {
                w = e.to;
                sign = 1;
            } else if (e.to == u) {
                w = e.from;
                sign = -1;
            } else {
                continue;
            }
            if (!seen[w]) {
                seen[w] = true;
                prevVertex[w] = u;
                prevEdge[w] = static_cast<int>(ei);
                prevSign[w] = sign;
                queue.push_back(w);
            }
        }
    }
    if (!seen[v])
        throw InputError("vertex unreachable in the spanning tree");
    std::vector<std::pair<int, int>> path;
    for (int u = v; u != baseVertex; u = prevVertex[u])
        path.emplace_back(prevEdge[u], prevSign[u]);
    std::reverse(path.begin(), path.end());
    return path;
}

RingWord normalizeRingWord(const GraphOfRingsSpec &, RingWord w)
{
    // stack pass (merge same-vertex neighbours, drop identities, cancel
    // t t^-1); repeat until stable since a cancellation can expose a merge
    RingWord cur = std::move(w);
    for (;;) {
        RingWord out;
        bool changed = false;
        for (const auto &l : cur) {
            if (!l.isStable) {
                if (l.elem.isZero())
                    throw InputError("zero ring letter has no word form");
                if (l.elem.isOne()) {
                    changed = true;
                    continue;
                }
                if (!out.empty() && !out.back().isStable && out.back().vertex == l.vertex) {
                    TowerElem merged = out.back().elem * l.elem;
                    out.pop_back();
                    if (!merged.isOne())
                        out.push_back({false, l.vertex, merged, -1, 0});
                    changed = true;
                    continue;
                }
                out.push_back(l);
                continue;
            }
            if (!out.empty() && out.back().isStable && out.back().edge == l.edge &&
                out.back().sign == -l.sign) {
                out.pop_back();
                changed = true;
                continue;
            }
            out.push_back(l);
        }
        if (!changed)
            return out;
        cur = std::move(out);
    }
}

bool ringWordEqual(const RingWord &a, const RingWord &b)
{
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].isStable != b[i].isStable)
            return false;
        if (a[i].isStable) {
            if (a[i].edge != b[i].edge || a[i].sign != b[i].sign)
                return false;
        } else {
            if (a[i].vertex != b[i].vertex || a[i].elem != b[i].elem)
                return false;
        }
    }
    return true;
}

std::string ringWordStr(const GraphOfRingsSpec &, const RingWord &w)
{
    if (w.empty())
        return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            os << " ";
        if (w[i].isStable)
            os << "t" << w[i].edge << (w[i].sign > 0 ? "" : "^-1");
        else
            os << "[v" << w[i].vertex << ": " << w[i].elem.str() << "]";
    }
    return os.str();
}

void checkLoopWord(const GraphOfRingsSpec &spec, const RingWord &w)
{
    int cur = spec.baseVertex;
    for (size_t i = 0; i < w.size(); ++i) {
        const auto &l = w[i];
        if (!l.isStable) {
            if (l.vertex != cur)
                throw InputError("loop condition violated at position " + std::to_string(i) +
                                 ": ring letter at vertex " + std::to_string(l.vertex) +
                                 " while the path is at " + std::to_string(cur));
            continue;
        }
        const auto &e = spec.edges.at(l.edge);
        if (l.sign > 0) {
            if (e.from != cur)
                throw InputError("loop condition violated at position " + std::to_string(i) +
                                 ": edge starts at " + std::to_string(e.from) +
                                 " while the path is at " + std::to_string(cur));
            cur = e.to;
        } else {
            if (e.to != cur)
                throw InputError("loop condition violated at position " + std::to_string(i) +
                                 ": reversed edge starts at " + std::to_string(e.to) +
                                 " while the path is at " + std::to_string(cur));
            cur = e.from;
        }
    }
    if (cur != spec.baseVertex)
        throw InputError("loop does not return to the base vertex (ends at " +
                         std::to_string(cur) + ")");
}

RingWord translateToTreeBased(const GraphOfRingsSpec &spec, const RingWord &loop)
{
    checkLoopWord(spec, loop);
    RingWord out;
    for (const auto &l : loop) {
        if (l.isStable && spec.edges.at(l.edge).inTree)
            continue; // tree stable letters are 1 in this presentation
        out.push_back(l);
    }
    return normalizeRingWord(spec, out);
}

RingWord translateToBaseVertex(const GraphOfRingsSpec &spec, const RingWord &w)
{
    RingWord out;
    auto emitPath = [&](const std::vector<std::pair<int, int>> &path, bool invert) {
        if (!invert) {
            for (const auto &[e, s] : path)
                out.push_back({true, -1, TowerElem(), e, s});
        } else {
            for (auto it = path.rbegin(); it != path.rend(); ++it)
                out.push_back({true, -1, TowerElem(), it->first, -it->second});
        }
    };
    for (const auto &l : w) {
        if (!l.isStable) {
            auto p = spec.treePath(l.vertex);
            emitPath(p, false);
            out.push_back(l);
            emitPath(p, true);
            continue;
        }
        const auto &e = spec.edges.at(l.edge);
        if (e.inTree)
            throw InputError("tree stable letter in a tree-based word");
        int u = l.sign > 0 ? e.from : e.to;
        int v = l.sign > 0 ? e.to : e.from;
        emitPath(spec.treePath(u), false);
        out.push_back(l);
        emitPath(spec.treePath(v), true);
    }
    checkLoopWord(spec, out);
    return normalizeRingWord(spec, out);
}

// --------------------------- injectivity fuzz ------------------------------

namespace {

// k[z, z^-1] with the basis z^n, indices interleaving 0, 1, -1, 2, -2, ...
int laurentIndexOf(int e)
{
    if (e == 0)
        return 0;
    return e > 0 ? 2 * e - 1 : -2 * e;
}
int laurentExpOf(int i)
{
    if (i == 0)
        return 0;
    return i % 2 ? (i + 1) / 2 : -i / 2;
}

BasedRing laurentRing(FieldKind f, const std::string &var)
{
    BasedRing r;
    r.field = f;
    r.name = "k[" + var + "^+-1]";
    r.mulBasis = [f](int i, int j) {
        return BRElem{{laurentIndexOf(laurentExpOf(i) + laurentExpOf(j)), Scalar::one(f)}};
    };
    r.degreeOf = [](int i) { return std::abs(laurentExpOf(i)); };
    r.indicesOfDegree = [](int d) {
        return d == 0 ? std::vector<int>{0}
                      : std::vector<int>{laurentIndexOf(d), laurentIndexOf(-d)};
    };
    r.basisName = [var](int i) { return var + "^" + std::to_string(laurentExpOf(i)); };
    return r;
}

} // namespace

InjectivityReport embedInjectivityFuzz(FieldKind field, int trials, unsigned seed)
{
    InjectivityReport rep;
    rep.trials = trials;
    rep.seed = seed;
    // F2 = HNN over a single vertex with one non-tree loop and trivial edge
    // ring: the ring of the graph is the coproduct of two Laurent rings,
    // whose basis words are exactly the F2 normal forms
    BasedRing B = laurentRing(field, "a");
    BasedRing C = laurentRing(field, "t");
    auto f2 = GroupSpec::makeFree(2, "F2", {"x", "y"});
    std::mt19937 rng(seed);

    auto imageOf = [&](const GroupElement &g) {
        std::vector<std::pair<int, BRElem>> factors;
        for (int l : g.freeWord()) {
            int side = std::abs(l) == 1 ? 0 : 1;
            int e = l > 0 ? 1 : -1;
            factors.emplace_back(side,
                                 BRElem{{laurentIndexOf(e), Scalar::one(field)}});
        }
        return coprodEval(B, C, {factors});
    };

    int done = 0;
    while (done < trials) {
        GroupAlgebraElement a(f2, field);
        int nt = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < nt; ++t) {
            Word w;
            int len = static_cast<int>(rng() % 5);
            for (int i = 0; i < len; ++i) {
                int l = 1 + static_cast<int>(rng() % 2);
                w.push_back(rng() % 2 ? l : -l);
            }
            long c = static_cast<long>(rng() % 5) - 2;
            a.addTerm(normalForm(f2, w), Scalar::fromInt(field, c));
        }
        if (a.isZero())
            continue;
        ++done;
        CoprodElem img;
        for (const auto &[g, c] : a.terms()) {
            CoprodElem term = imageOf(g);
            for (auto &[w, cc] : term.terms)
                cc = cc * c;
            img = coprodAdd(img, term, B, C);
        }
        if (img.isZero()) {
            rep.allNonzero = false;
            rep.kernelWitness = a.str();
            rep.detail = "zero image for " + a.str();
            return rep;
        }
    }
    rep.detail = "all " + std::to_string(trials) + " nonzero elements had nonzero images";
    return rep;
}

} // namespace skewlab
