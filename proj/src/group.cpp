#include "skewlab/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace skewlab {

Word inverseWord(const Word &w)
{
    Word r(w.rbegin(), w.rend());
    for (int &l : r)
        l = -l;
    return r;
}

Word freeReduce(const Word &w)
{
    Word r;
    for (int l : w) {
        if (l == 0)
            throw InputError("generator index 0 in word");
        if (!r.empty() && r.back() == -l)
            r.pop_back();
        else
            r.push_back(l);
    }
    return r;
}

namespace {

std::vector<std::string> defaultGenNames(int rank, const std::vector<std::string> &given)
{
    if (!given.empty()) {
        if (static_cast<int>(given.size()) != rank)
            throw InputError("generator name count does not match rank");
        return given;
    }
    static const char *pool = "abcdefghijklmnopqrstuvwxyz";
    std::vector<std::string> names;
    for (int i = 0; i < rank; ++i)
        names.push_back(i < 26 ? std::string(1, pool[i]) : "g" + std::to_string(i + 1));
    return names;
}

void checkWordIndices(const Word &w, int rank, const char *what)
{
    for (int l : w)
        if (l == 0 || std::abs(l) > rank)
            throw InputError(std::string("invalid generator index ") + std::to_string(l) + " in " +
                             what);
}

} // namespace

int GroupSpec::generatorIndex(const std::string &gname) const
{
    for (size_t i = 0; i < generatorNames.size(); ++i)
        if (generatorNames[i] == gname)
            return static_cast<int>(i) + 1;
    throw InputError("unknown generator '" + gname + "' in group " + name);
}

GroupSpecPtr GroupSpec::makeFree(int rank, std::string name, std::vector<std::string> genNames)
{
    if (rank < 0)
        throw InputError("free group rank must be nonnegative");
    auto s = std::make_shared<GroupSpec>();
    s->kind = GroupKind::Free;
    s->name = std::move(name);
    s->generatorNames = defaultGenNames(rank, genNames);
    return s;
}

GroupSpecPtr GroupSpec::makeFreeAbelian(int rank, std::string name,
                                        std::vector<std::string> genNames)
{
    if (rank < 1)
        throw InputError("free-abelian rank must be positive");
    auto s = std::make_shared<GroupSpec>();
    s->kind = GroupKind::FreeAbelian;
    s->name = std::move(name);
    s->generatorNames = defaultGenNames(rank, genNames);
    return s;
}

// ---------------------------------------------------------------------------
// poly-Z normal forms
//
// An element is stored as the exponent vector (e_1, ..., e_n) of the unique
// product  g_1^{e_1} g_2^{e_2} ... g_n^{e_n}  with the bottom layer first.

namespace {

// conjugate of a word in generators < j by g_j^e (using the layer actions)
Word conjugateByLayer(const GroupSpec &spec, const Word &w, int j, long e)
{
    const PolyZLayer &layer = spec.layers[j - 1];
    Word cur = w;
    for (long step = 0; step < std::labs(e); ++step) {
        Word next;
        for (int l : cur) {
            int gen = std::abs(l);
            const Word &img = e > 0 ? layer.action[gen - 1] : layer.actionInv[gen - 1];
            Word piece = l > 0 ? img : inverseWord(img);
            next.insert(next.end(), piece.begin(), piece.end());
        }
        cur = freeReduce(next);
    }
    return cur;
}

void polyzMulWord(const GroupSpec &spec, std::vector<long> &exps, int m, const Word &w);

// multiply the layers-(1..m) prefix of the normal form by g_i^s
void polyzMulLetter(const GroupSpec &spec, std::vector<long> &exps, int m, int i, int s)
{
    int j = 0;
    for (int k = m; k > i; --k)
        if (exps[k - 1] != 0) {
            j = k;
            break;
        }
    if (j == 0) {
        exps[i - 1] += s;
        return;
    }
    Word conj = conjugateByLayer(spec, Word{s > 0 ? i : -i}, j, exps[j - 1]);
    polyzMulWord(spec, exps, j - 1, conj);
}

void polyzMulWord(const GroupSpec &spec, std::vector<long> &exps, int m, const Word &w)
{
    for (int l : w)
        polyzMulLetter(spec, exps, m, std::abs(l), l > 0 ? 1 : -1);
}

std::vector<long> polyzNormalForm(const GroupSpec &spec, const Word &w)
{
    std::vector<long> exps(spec.layers.size(), 0);
    polyzMulWord(spec, exps, static_cast<int>(spec.layers.size()), w);
    return exps;
}

Word exponentsToWord(const std::vector<long> &exps)
{
    Word w;
    for (size_t i = 0; i < exps.size(); ++i) {
        long e = exps[i];
        for (long k = 0; k < std::labs(e); ++k)
            w.push_back(e > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1));
    }
    return w;
}

} // namespace

GroupSpecPtr GroupSpec::makePolyZ(std::vector<PolyZLayer> layers, std::string name,
                                  std::vector<std::string> genNames)
{
    if (layers.empty())
        throw InputError("poly-Z group needs at least one layer");
    auto s = std::make_shared<GroupSpec>();
    s->kind = GroupKind::PolyZ;
    s->name = std::move(name);
    s->generatorNames = defaultGenNames(static_cast<int>(layers.size()), genNames);
    for (size_t j = 0; j < layers.size(); ++j) {
        if (layers[j].action.size() != j || layers[j].actionInv.size() != j)
            throw InputError("layer " + std::to_string(j + 1) + " must act on the " +
                             std::to_string(j) + " generators below it");
        for (size_t g = 0; g < j; ++g) {
            checkWordIndices(layers[j].action[g], static_cast<int>(j), "automorphism word");
            checkWordIndices(layers[j].actionInv[g], static_cast<int>(j), "automorphism word");
        }
    }
    s->layers = std::move(layers);

    // each descriptor must compose with its inverse to the identity
    for (size_t j = 1; j < s->layers.size(); ++j) {
        for (size_t g = 0; g < j; ++g) {
            Word w = s->layers[j].action[g];
            Word composed;
            for (int l : w) {
                const Word &img = s->layers[j].actionInv[std::abs(l) - 1];
                Word piece = l > 0 ? img : inverseWord(img);
                composed.insert(composed.end(), piece.begin(), piece.end());
            }
            // compare inside the sub-poly-Z group of the first j layers
            GroupSpec sub;
            sub.kind = GroupKind::PolyZ;
            sub.layers.assign(s->layers.begin(), s->layers.begin() + j);
            auto nf = polyzNormalForm(sub, composed);
            std::vector<long> expect(j, 0);
            expect[g] = 1;
            if (nf != expect)
                throw InputError("layer " + std::to_string(j + 1) +
                                 ": automorphism descriptor is not inverted by its inverse "
                                 "descriptor (generator " +
                                 std::to_string(g + 1) + ")");
        }
    }
    return s;
}

GroupSpecPtr GroupSpec::makeGraphOfGroups(GraphOfGroupsData data, std::string name)
{
    if (data.vertexGroups.empty())
        throw InputError("graph of groups needs at least one vertex");
    int nv = static_cast<int>(data.vertexGroups.size());
    if (data.baseVertex < 0 || data.baseVertex >= nv)
        throw InputError("base vertex out of range");
    for (const auto &e : data.edges) {
        if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv)
            throw InputError("edge endpoint out of range");
        if (e.edgeGroup) {
            if (static_cast<int>(e.imagesAtTo.size()) != e.edgeGroup->rank() ||
                static_cast<int>(e.imagesAtFrom.size()) != e.edgeGroup->rank())
                throw InputError("edge morphism must list an image per edge-group generator");
        }
    }
    // spanning-tree check: tree edges must connect the graph acyclically
    std::vector<int> comp(nv);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[v] != v)
            v = comp[v] = comp[comp[v]];
        return v;
    };
    int treeEdges = 0;
    for (const auto &e : data.edges)
        if (e.inTree) {
            ++treeEdges;
            int a = find(e.from), b = find(e.to);
            if (a == b)
                throw InputError("spanning tree contains a cycle");
            comp[a] = b;
        }
    if (treeEdges != nv - 1)
        throw InputError("spanning tree must have exactly " + std::to_string(nv - 1) + " edges");
    for (int v = 0; v < nv; ++v)
        if (find(v) != find(0))
            throw InputError("spanning tree does not span the graph");

    auto s = std::make_shared<GroupSpec>();
    s->kind = GroupKind::GraphOfGroups;
    s->name = std::move(name);
    // flattened generator alphabet: vertex generators, then one letter per edge
    for (int v = 0; v < nv; ++v)
        for (const auto &gn : data.vertexGroups[v]->generatorNames)
            s->generatorNames.push_back("v" + std::to_string(v) + "." + gn);
    for (size_t e = 0; e < data.edges.size(); ++e)
        s->generatorNames.push_back("t" + std::to_string(e));
    s->graph = std::move(data);
    return s;
}

GroupSpecPtr GroupSpec::makeFiniteExtension(FiniteExtensionData data, std::string name)
{
    if (!data.normal)
        throw InputError("finite extension needs a normal subgroup spec");
    int m = static_cast<int>(data.qMult.size());
    if (m < 1)
        throw InputError("finite quotient must be nonempty");
    for (const auto &row : data.qMult)
        if (static_cast<int>(row.size()) != m)
            throw InputError("quotient multiplication table must be square");
    for (int q = 0; q < m; ++q)
        if (data.qMult[0][q] != q || data.qMult[q][0] != q)
            throw InputError("quotient element 0 must be the identity");
    if (static_cast<int>(data.qInv.size()) != m)
        throw InputError("quotient inverse table has wrong size");
    for (int q = 0; q < m; ++q)
        if (data.qMult[q][data.qInv[q]] != 0)
            throw InputError("quotient inverse table is wrong at " + std::to_string(q));
    if (static_cast<int>(data.action.size()) != m || static_cast<int>(data.factorSet.size()) != m)
        throw InputError("action/factor set must be indexed by the quotient");

    auto s = std::make_shared<GroupSpec>();
    s->kind = GroupKind::FiniteExtension;
    s->name = std::move(name);
    for (const auto &gn : data.normal->generatorNames)
        s->generatorNames.push_back(gn);
    for (int q = 1; q < m; ++q)
        s->generatorNames.push_back("u" + std::to_string(q));
    s->finiteExt = std::move(data);

    // cocycle + action compatibility, checked exhaustively over Q on the
    // normal group's generators (associativity of the extension)
    const auto &fe = *s->finiteExt;
    {
        auto nrm = fe.normal;
        auto wordElem = [&](const Word &w) { return normalForm(nrm, w); };
        auto act = [&](int q, const GroupElement &h) {
            // image of h under the action of q, via generator images
            Word out;
            Word hw;
            if (nrm->kind == GroupKind::Free)
                hw = h.freeWord();
            else
                hw = exponentsToWord(h.exponents());
            for (int l : hw) {
                const Word &img = fe.action[q][std::abs(l) - 1];
                Word piece = l > 0 ? img : inverseWord(img);
                out.insert(out.end(), piece.begin(), piece.end());
            }
            return wordElem(out);
        };
        for (int q = 0; q < m; ++q) {
            if (static_cast<int>(fe.action[q].size()) != nrm->rank())
                throw InputError("action of quotient element " + std::to_string(q) +
                                 " must list an image per generator");
            if (static_cast<int>(fe.factorSet[q].size()) != m)
                throw InputError("factor set row " + std::to_string(q) + " has wrong size");
        }
        // normalized factor set
        for (int q = 0; q < m; ++q) {
            if (!wordElem(fe.factorSet[0][q]).isIdentity() ||
                !wordElem(fe.factorSet[q][0]).isIdentity())
                throw InputError("factor set must be normalized: f(1,q) = f(q,1) = 1");
        }
        for (int q1 = 0; q1 < m; ++q1)
            for (int q2 = 0; q2 < m; ++q2) {
                // alpha_{q1} alpha_{q2} = conj_{f(q1,q2)} alpha_{q1 q2} on generators
                for (int g = 1; g <= nrm->rank(); ++g) {
                    GroupElement gen = normalForm(nrm, Word{g});
                    GroupElement lhs = act(q1, act(q2, gen));
                    GroupElement f12 = wordElem(fe.factorSet[q1][q2]);
                    GroupElement rhs =
                        multiply(multiply(f12, act(fe.qMult[q1][q2], gen)), inverse(f12));
                    if (lhs != rhs)
                        throw InputError("extension action is incompatible with the factor set at (" +
                                         std::to_string(q1) + "," + std::to_string(q2) + ")");
                }
                for (int q3 = 0; q3 < m; ++q3) {
                    // cocycle: f(q1,q2) f(q1q2,q3) = alpha_{q1}(f(q2,q3)) f(q1,q2q3)
                    GroupElement lhs = multiply(wordElem(fe.factorSet[q1][q2]),
                                                wordElem(fe.factorSet[fe.qMult[q1][q2]][q3]));
                    GroupElement rhs = multiply(act(q1, wordElem(fe.factorSet[q2][q3])),
                                                wordElem(fe.factorSet[q1][fe.qMult[q2][q3]]));
                    if (lhs != rhs)
                        throw InputError("factor set fails the cocycle condition at (" +
                                         std::to_string(q1) + "," + std::to_string(q2) + "," +
                                         std::to_string(q3) + ")");
                }
            }
    }
    return s;
}

// ---------------------------------------------------------------------------
// GroupElement

BassSerreLetter BassSerreLetter::vertexElem(int v, GroupElement g)
{
    BassSerreLetter l;
    l.vertex = v;
    l.elem = std::move(g);
    return l;
}

BassSerreLetter BassSerreLetter::stable(int edge, int sign)
{
    BassSerreLetter l;
    l.edge = edge;
    l.sign = sign;
    return l;
}

bool BassSerreLetter::operator==(const BassSerreLetter &o) const { return compare(o) == 0; }

int BassSerreLetter::compare(const BassSerreLetter &o) const
{
    if (vertex != o.vertex)
        return vertex < o.vertex ? -1 : 1;
    if (isStable()) {
        if (edge != o.edge)
            return edge < o.edge ? -1 : 1;
        if (sign != o.sign)
            return sign < o.sign ? -1 : 1;
        return 0;
    }
    return elem.compare(o.elem);
}

const Word &GroupElement::freeWord() const
{
    if (auto *w = std::get_if<Word>(&data_))
        return *w;
    throw MismatchError("element is not in free-word form");
}

const std::vector<long> &GroupElement::exponents() const
{
    if (auto *e = std::get_if<std::vector<long>>(&data_))
        return *e;
    throw MismatchError("element is not in exponent-vector form");
}

const std::vector<BassSerreLetter> &GroupElement::bsLetters() const
{
    if (auto *p = std::get_if<std::shared_ptr<const std::vector<BassSerreLetter>>>(&data_))
        return **p;
    throw MismatchError("element is not in Bass-Serre form");
}

const FiniteExtPair &GroupElement::extPair() const
{
    if (auto *p = std::get_if<std::shared_ptr<const FiniteExtPair>>(&data_))
        return **p;
    throw MismatchError("element is not a finite-extension pair");
}

bool GroupElement::isIdentity() const
{
    if (!spec_)
        return true;
    switch (spec_->kind) {
    case GroupKind::Free:
        return freeWord().empty();
    case GroupKind::FreeAbelian:
    case GroupKind::PolyZ: {
        for (long e : exponents())
            if (e != 0)
                return false;
        return true;
    }
    case GroupKind::GraphOfGroups:
        return bsLetters().empty();
    case GroupKind::FiniteExtension:
        return extPair().q == 0 && extPair().normalPart.isIdentity();
    }
    return false;
}

bool GroupElement::operator==(const GroupElement &o) const { return compare(o) == 0; }

int GroupElement::compare(const GroupElement &o) const
{
    if (spec_.get() != o.spec_.get())
        throw MismatchError("comparing elements of different group specs");
    if (!spec_)
        return 0;
    switch (spec_->kind) {
    case GroupKind::Free: {
        const Word &a = freeWord(), &b = o.freeWord();
        if (a.size() != b.size())
            return a.size() < b.size() ? -1 : 1;
        return a < b ? -1 : (a == b ? 0 : 1);
    }
    case GroupKind::FreeAbelian:
    case GroupKind::PolyZ: {
        const auto &a = exponents(), &b = o.exponents();
        return a < b ? -1 : (a == b ? 0 : 1);
    }
    case GroupKind::GraphOfGroups: {
        const auto &a = bsLetters(), &b = o.bsLetters();
        if (a.size() != b.size())
            return a.size() < b.size() ? -1 : 1;
        for (size_t i = 0; i < a.size(); ++i)
            if (int c = a[i].compare(b[i]))
                return c;
        return 0;
    }
    case GroupKind::FiniteExtension: {
        if (extPair().q != o.extPair().q)
            return extPair().q < o.extPair().q ? -1 : 1;
        return extPair().normalPart.compare(o.extPair().normalPart);
    }
    }
    return 0;
}

std::string GroupElement::str() const
{
    if (!spec_ || isIdentity())
        return "1";
    std::ostringstream os;
    auto emitWord = [&](const Word &w, const std::vector<std::string> &names) {
        for (size_t i = 0; i < w.size();) {
            size_t j = i;
            while (j < w.size() && w[j] == w[i])
                ++j;
            long e = static_cast<long>(j - i) * (w[i] > 0 ? 1 : -1);
            if (i)
                os << " ";
            os << names[std::abs(w[i]) - 1];
            if (e != 1)
                os << "^" << e;
            i = j;
        }
    };
    switch (spec_->kind) {
    case GroupKind::Free:
        emitWord(freeWord(), spec_->generatorNames);
        break;
    case GroupKind::FreeAbelian:
    case GroupKind::PolyZ: {
        bool first = true;
        const auto &e = exponents();
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) {
                if (!first)
                    os << " ";
                first = false;
                os << spec_->generatorNames[i];
                if (e[i] != 1)
                    os << "^" << e[i];
            }
        break;
    }
    case GroupKind::GraphOfGroups: {
        bool first = true;
        for (const auto &l : bsLetters()) {
            if (!first)
                os << " ";
            first = false;
            if (l.isStable())
                os << (l.sign > 0 ? "t" : "t^-1") << "[" << l.edge << "]";
            else
                os << "(" << l.elem.str() << ")@v" << l.vertex;
        }
        break;
    }
    case GroupKind::FiniteExtension:
        os << "(" << extPair().normalPart.str() << ", u" << extPair().q << ")";
        break;
    }
    return os.str();
}

GroupElement identity(const GroupSpecPtr &spec) { return normalForm(spec, Word{}); }

namespace {

std::vector<BassSerreLetter>
reduceBassSerre(const GroupSpec &spec, const std::vector<BassSerreLetter> &letters)
{
    // Trivial edge groups: free-product reduction.  Merge adjacent
    // same-vertex elements, drop identities, cancel t_e t_e^{-1}.
    std::vector<BassSerreLetter> out;
    for (const auto &l : letters) {
        if (!l.isStable()) {
            if (l.elem.isIdentity())
                continue;
            if (!out.empty() && !out.back().isStable() && out.back().vertex == l.vertex) {
                GroupElement merged = multiply(out.back().elem, l.elem);
                out.pop_back();
                if (!merged.isIdentity())
                    out.push_back(BassSerreLetter::vertexElem(l.vertex, merged));
                continue;
            }
            out.push_back(l);
            continue;
        }
        if (!out.empty() && out.back().isStable() && out.back().edge == l.edge &&
            out.back().sign == -l.sign) {
            out.pop_back();
            // pinching may enable a merge of the newly adjacent letters
            if (out.size() >= 2 && !out.back().isStable()) {
                BassSerreLetter last = out.back();
                out.pop_back();
                if (!out.empty() && !out.back().isStable() && out.back().vertex == last.vertex) {
                    GroupElement merged = multiply(out.back().elem, last.elem);
                    out.pop_back();
                    if (!merged.isIdentity())
                        out.push_back(BassSerreLetter::vertexElem(last.vertex, merged));
                } else {
                    out.push_back(last);
                }
            }
            continue;
        }
        out.push_back(l);
    }
    (void)spec;
    return out;
}

void requireTrivialEdgeGroups(const GroupSpec &spec)
{
    for (const auto &e : spec.graph->edges)
        if (e.edgeGroup && e.edgeGroup->rank() > 0)
            throw UnsupportedError(
                "graph-of-groups element arithmetic supports trivial edge groups only");
}

// tree geodesic from the base vertex to v, as (edge, sign) pairs
std::vector<std::pair<int, int>> treePath(const GraphOfGroupsData &g, int v)
{
    int nv = static_cast<int>(g.vertexGroups.size());
    std::vector<int> prevEdge(nv, -1), prevVertex(nv, -1), prevSign(nv, 0);
    std::deque<int> queue{g.baseVertex};
    std::vector<bool> seen(nv, false);
    seen[g.baseVertex] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            const auto &e = g.edges[ei];
            if (!e.inTree)
                continue;
            for (auto [a, b, sgn] : {std::tuple{e.from, e.to, 1}, std::tuple{e.to, e.from, -1}})
                if (a == u && !seen[b]) {
                    seen[b] = true;
                    prevEdge[b] = static_cast<int>(ei);
                    prevVertex[b] = a;
                    prevSign[b] = sgn;
                    queue.push_back(b);
                }
        }
    }
    std::vector<std::pair<int, int>> path;
    for (int u = v; u != g.baseVertex; u = prevVertex[u])
        path.emplace_back(prevEdge[u], prevSign[u]);
    std::reverse(path.begin(), path.end());
    return path;
}

GroupElement makeGraphElement(const GroupSpecPtr &spec, std::vector<BassSerreLetter> letters);

// the loop element gamma_v g gamma_v^{-1} (or gamma_{o(e)} t_e gamma_{t(e)}^{-1})
std::vector<BassSerreLetter> loopOfVertexElem(const GroupSpecPtr &spec, int v,
                                              const GroupElement &g)
{
    auto path = treePath(*spec->graph, v);
    std::vector<BassSerreLetter> letters;
    for (auto [e, s] : path)
        letters.push_back(BassSerreLetter::stable(e, s));
    letters.push_back(BassSerreLetter::vertexElem(v, g));
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        letters.push_back(BassSerreLetter::stable(it->first, -it->second));
    return letters;
}

std::vector<BassSerreLetter> loopOfStable(const GroupSpecPtr &spec, int edge, int sign)
{
    const auto &e = spec->graph->edges[edge];
    int from = sign > 0 ? e.from : e.to;
    int to = sign > 0 ? e.to : e.from;
    auto pathIn = treePath(*spec->graph, from);
    auto pathOut = treePath(*spec->graph, to);
    std::vector<BassSerreLetter> letters;
    for (auto [pe, s] : pathIn)
        letters.push_back(BassSerreLetter::stable(pe, s));
    letters.push_back(BassSerreLetter::stable(edge, sign));
    for (auto it = pathOut.rbegin(); it != pathOut.rend(); ++it)
        letters.push_back(BassSerreLetter::stable(it->first, -it->second));
    return letters;
}

GroupElement makeGraphElement(const GroupSpecPtr &spec, std::vector<BassSerreLetter> letters)
{
    GroupElement g;
    // access private members through friendship of GraphOfGroupsBuilder
    GraphOfGroupsBuilder builder(spec);
    for (auto &l : letters) {
        if (l.isStable())
            builder.stable(l.edge, l.sign);
        else
            builder.vertexElem(l.vertex, l.elem);
    }
    return builder.build();
}

} // namespace

GraphOfGroupsBuilder::GraphOfGroupsBuilder(GroupSpecPtr spec) : spec_(std::move(spec))
{
    if (spec_->kind != GroupKind::GraphOfGroups)
        throw MismatchError("builder requires a graph-of-groups spec");
}

GraphOfGroupsBuilder &GraphOfGroupsBuilder::vertexElem(int vertex, const GroupElement &g)
{
    if (vertex < 0 || vertex >= static_cast<int>(spec_->graph->vertexGroups.size()))
        throw InputError("vertex out of range");
    if (g.spec().get() != spec_->graph->vertexGroups[vertex].get())
        throw MismatchError("element does not belong to the vertex group");
    letters_.push_back(BassSerreLetter::vertexElem(vertex, g));
    return *this;
}

GraphOfGroupsBuilder &GraphOfGroupsBuilder::stable(int edge, int sign)
{
    if (edge < 0 || edge >= static_cast<int>(spec_->graph->edges.size()))
        throw InputError("edge out of range");
    if (sign != 1 && sign != -1)
        throw InputError("stable-letter sign must be +1 or -1");
    letters_.push_back(BassSerreLetter::stable(edge, sign));
    return *this;
}

GroupElement GraphOfGroupsBuilder::build() const
{
    requireTrivialEdgeGroups(*spec_);
    const auto &g = *spec_->graph;
    // loop conditions: consecutive positions match up and the path is based
    int pos = g.baseVertex;
    for (size_t i = 0; i < letters_.size(); ++i) {
        const auto &l = letters_[i];
        if (l.isStable()) {
            const auto &e = g.edges[l.edge];
            int from = l.sign > 0 ? e.from : e.to;
            int to = l.sign > 0 ? e.to : e.from;
            if (pos != from)
                throw InputError("loop condition violated at letter " + std::to_string(i) +
                                 ": stable letter origin mismatch");
            pos = to;
        } else if (l.vertex != pos) {
            throw InputError("loop condition violated at letter " + std::to_string(i) +
                             ": vertex element at the wrong position");
        }
    }
    if (pos != g.baseVertex)
        throw InputError("loop condition violated: word does not return to the base vertex");

    GroupElement out;
    out.spec_ = spec_;
    out.data_ = std::make_shared<const std::vector<BassSerreLetter>>(
        reduceBassSerre(*spec_, letters_));
    return out;
}

GroupElement makeExtensionElement(const GroupSpecPtr &spec, const GroupElement &normalPart, int q)
{
    if (spec->kind != GroupKind::FiniteExtension)
        throw MismatchError("spec is not a finite extension");
    if (normalPart.spec().get() != spec->finiteExt->normal.get())
        throw MismatchError("normal part belongs to the wrong group");
    if (q < 0 || q >= static_cast<int>(spec->finiteExt->qMult.size()))
        throw InputError("quotient index out of range");
    GroupElement out;
    out.spec_ = spec;
    auto pair = std::make_shared<FiniteExtPair>();
    pair->normalPart = normalPart;
    pair->q = q;
    out.data_ = std::shared_ptr<const FiniteExtPair>(pair);
    return out;
}

GroupElement normalForm(const GroupSpecPtr &spec, const Word &rawWord)
{
    if (!spec)
        throw InputError("null group spec");
    GroupElement out;
    out.spec_ = spec;
    switch (spec->kind) {
    case GroupKind::Free:
        checkWordIndices(rawWord, spec->rank(), "word");
        out.data_ = freeReduce(rawWord);
        return out;
    case GroupKind::FreeAbelian: {
        checkWordIndices(rawWord, spec->rank(), "word");
        std::vector<long> exps(spec->rank(), 0);
        for (int l : rawWord)
            exps[std::abs(l) - 1] += l > 0 ? 1 : -1;
        out.data_ = std::move(exps);
        return out;
    }
    case GroupKind::PolyZ:
        checkWordIndices(rawWord, spec->rank(), "word");
        out.data_ = polyzNormalForm(*spec, rawWord);
        return out;
    case GroupKind::GraphOfGroups: {
        requireTrivialEdgeGroups(*spec);
        checkWordIndices(rawWord, spec->rank(), "word");
        const auto &g = *spec->graph;
        // map flattened generators to loop elements and multiply out
        int nVertexGens = 0;
        std::vector<std::pair<int, int>> vertexGen; // (vertex, local index)
        for (size_t v = 0; v < g.vertexGroups.size(); ++v)
            for (int j = 1; j <= g.vertexGroups[v]->rank(); ++j)
                vertexGen.emplace_back(static_cast<int>(v), j);
        nVertexGens = static_cast<int>(vertexGen.size());
        GroupElement acc = makeGraphElement(spec, {});
        for (int l : rawWord) {
            int idx = std::abs(l);
            std::vector<BassSerreLetter> loop;
            if (idx <= nVertexGens) {
                auto [v, j] = vertexGen[idx - 1];
                GroupElement ve = normalForm(g.vertexGroups[v], Word{l > 0 ? j : -j});
                loop = loopOfVertexElem(spec, v, ve);
            } else {
                int e = idx - nVertexGens - 1;
                loop = loopOfStable(spec, e, l > 0 ? 1 : -1);
            }
            acc = multiply(acc, makeGraphElement(spec, loop));
        }
        return acc;
    }
    case GroupKind::FiniteExtension: {
        checkWordIndices(rawWord, spec->rank(), "word");
        const auto &fe = *spec->finiteExt;
        int nNormalGens = fe.normal->rank();
        GroupElement acc = makeExtensionElement(spec, identity(fe.normal), 0);
        for (int l : rawWord) {
            int idx = std::abs(l);
            GroupElement letter =
                idx <= nNormalGens
                    ? makeExtensionElement(spec,
                                           normalForm(fe.normal, Word{l > 0 ? idx : -idx}), 0)
                    : makeExtensionElement(spec, identity(fe.normal), idx - nNormalGens);
            if (idx > nNormalGens && l < 0)
                letter = inverse(letter);
            acc = multiply(acc, letter);
        }
        return acc;
    }
    }
    throw InputError("unknown group kind");
}

namespace {

GroupElement extAction(const GroupSpecPtr &spec, int q, const GroupElement &h)
{
    const auto &fe = *spec->finiteExt;
    Word hw;
    if (fe.normal->kind == GroupKind::Free)
        hw = h.freeWord();
    else
        hw = exponentsToWord(h.exponents());
    Word out;
    for (int l : hw) {
        const Word &img = fe.action[q][std::abs(l) - 1];
        Word piece = l > 0 ? img : inverseWord(img);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return normalForm(fe.normal, out);
}

} // namespace

GroupElement multiply(const GroupElement &g, const GroupElement &h)
{
    if (g.spec().get() != h.spec().get())
        throw MismatchError("multiplying elements of different group specs");
    const auto &spec = g.spec();
    GroupElement out;
    switch (spec->kind) {
    case GroupKind::Free: {
        Word w = g.freeWord();
        const Word &v = h.freeWord();
        w.insert(w.end(), v.begin(), v.end());
        return normalForm(spec, w);
    }
    case GroupKind::FreeAbelian: {
        std::vector<long> exps = g.exponents();
        for (size_t i = 0; i < exps.size(); ++i)
            exps[i] += h.exponents()[i];
        out.spec_ = spec;
        out.data_ = std::move(exps);
        return out;
    }
    case GroupKind::PolyZ: {
        std::vector<long> exps = g.exponents();
        polyzMulWord(*spec, exps, spec->rank(), exponentsToWord(h.exponents()));
        out.spec_ = spec;
        out.data_ = std::move(exps);
        return out;
    }
    case GroupKind::GraphOfGroups: {
        std::vector<BassSerreLetter> letters = g.bsLetters();
        const auto &hl = h.bsLetters();
        letters.insert(letters.end(), hl.begin(), hl.end());
        return makeGraphElement(spec, reduceBassSerre(*spec, letters));
    }
    case GroupKind::FiniteExtension: {
        const auto &fe = *spec->finiteExt;
        const auto &a = g.extPair();
        const auto &b = h.extPair();
        GroupElement f = normalForm(fe.normal, Word{});
        {
            Word fw = fe.factorSet[a.q][b.q];
            f = normalForm(fe.normal, fw);
        }
        GroupElement n = multiply(multiply(a.normalPart, extAction(spec, a.q, b.normalPart)), f);
        return makeExtensionElement(spec, n, fe.qMult[a.q][b.q]);
    }
    }
    throw InputError("unknown group kind");
}

GroupElement inverse(const GroupElement &g)
{
    const auto &spec = g.spec();
    GroupElement out;
    switch (spec->kind) {
    case GroupKind::Free:
        return normalForm(spec, inverseWord(g.freeWord()));
    case GroupKind::FreeAbelian: {
        std::vector<long> exps = g.exponents();
        for (long &e : exps)
            e = -e;
        out.spec_ = spec;
        out.data_ = std::move(exps);
        return out;
    }
    case GroupKind::PolyZ: {
        // (g1^e1 ... gn^en)^-1: multiply the inverse letters in reverse order
        std::vector<long> exps(spec->rank(), 0);
        Word w = exponentsToWord(g.exponents());
        polyzMulWord(*spec, exps, spec->rank(), inverseWord(w));
        out.spec_ = spec;
        out.data_ = std::move(exps);
        return out;
    }
    case GroupKind::GraphOfGroups: {
        const auto &letters = g.bsLetters();
        std::vector<BassSerreLetter> inv;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            if (it->isStable())
                inv.push_back(BassSerreLetter::stable(it->edge, -it->sign));
            else
                inv.push_back(BassSerreLetter::vertexElem(it->vertex, inverse(it->elem)));
        }
        return makeGraphElement(spec, reduceBassSerre(*spec, inv));
    }
    case GroupKind::FiniteExtension: {
        const auto &fe = *spec->finiteExt;
        const auto &a = g.extPair();
        int qi = fe.qInv[a.q];
        // solve (h, q)(h', q^-1) = (1, 0):  alpha_q(h') = h^-1 f(q, q^-1)^-1
        GroupElement target = multiply(inverse(a.normalPart),
                                       inverse(normalForm(fe.normal, fe.factorSet[a.q][qi])));
        // alpha_q^{-1}(y) = f(q^-1,q)^{-1} alpha_{q^-1}(y) f(q^-1,q)
        GroupElement fiq = normalForm(fe.normal, fe.factorSet[qi][a.q]);
        GroupElement hp = multiply(multiply(inverse(fiq), extAction(g.spec(), qi, target)), fiq);
        return makeExtensionElement(g.spec(), hp, qi);
    }
    }
    throw InputError("unknown group kind");
}

GroupElement power(const GroupElement &g, long n)
{
    GroupElement base = n < 0 ? inverse(g) : g;
    GroupElement acc = identity(g.spec());
    for (long i = 0; i < std::labs(n); ++i)
        acc = multiply(acc, base);
    return acc;
}

} // namespace skewlab
