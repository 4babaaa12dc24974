#include "skewlab/group.hpp"

#include <algorithm>
#include <deque>

namespace skewlab {

namespace {

Word expsToWord(const std::vector<long> &exps)
{
    Word w;
    for (size_t i = 0; i < exps.size(); ++i)
        for (long k = 0; k < std::labs(exps[i]); ++k)
            w.push_back(exps[i] > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1));
    return w;
}

} // namespace

Word elementWord(const GroupElement &g)
{
    const auto &spec = g.spec();
    switch (spec->kind) {
    case GroupKind::Free:
        return g.freeWord();
    case GroupKind::FreeAbelian:
    case GroupKind::PolyZ:
        return expsToWord(g.exponents());
    case GroupKind::FiniteExtension: {
        const auto &pair = g.extPair();
        Word w = elementWord(pair.normalPart);
        if (pair.q != 0)
            w.push_back(spec->finiteExt->normal->rank() + pair.q);
        return w;
    }
    case GroupKind::GraphOfGroups:
        throw UnsupportedError("graph-of-groups elements have no flat generator word");
    }
    throw InputError("unknown group kind");
}

Presentation presentation(const GroupSpecPtr &spec)
{
    Presentation p;
    p.numGenerators = spec->rank();
    switch (spec->kind) {
    case GroupKind::Free:
        return p;
    case GroupKind::FreeAbelian:
        for (int i = 1; i <= spec->rank(); ++i)
            for (int j = i + 1; j <= spec->rank(); ++j)
                p.relators.push_back(Word{i, j, -i, -j});
        return p;
    case GroupKind::PolyZ:
        // g_j g_i g_j^-1 = phi_j(g_i) for i < j
        for (int j = 2; j <= spec->rank(); ++j)
            for (int i = 1; i < j; ++i) {
                Word r{j, i, -j};
                Word img = inverseWord(spec->layers[j - 1].action[i - 1]);
                r.insert(r.end(), img.begin(), img.end());
                p.relators.push_back(freeReduce(r));
            }
        return p;
    case GroupKind::FiniteExtension: {
        const auto &fe = *spec->finiteExt;
        int n = fe.normal->rank();
        int m = static_cast<int>(fe.qMult.size());
        Presentation np = presentation(fe.normal);
        p.relators = np.relators;
        auto unit = [&](int q) { return n + q; }; // generator index of u_q, q >= 1
        for (int q = 1; q < m; ++q)
            for (int i = 1; i <= n; ++i) {
                Word r{unit(q), i, -unit(q)};
                Word img = inverseWord(fe.action[q][i - 1]);
                r.insert(r.end(), img.begin(), img.end());
                p.relators.push_back(freeReduce(r));
            }
        for (int q1 = 1; q1 < m; ++q1)
            for (int q2 = 1; q2 < m; ++q2) {
                // u_{q1} u_{q2} = f(q1,q2) u_{q1 q2}
                Word rhs = fe.factorSet[q1][q2];
                int q3 = fe.qMult[q1][q2];
                if (q3 != 0)
                    rhs.push_back(unit(q3));
                Word r{unit(q1), unit(q2)};
                Word inv = inverseWord(rhs);
                r.insert(r.end(), inv.begin(), inv.end());
                p.relators.push_back(freeReduce(r));
            }
        return p;
    }
    case GroupKind::GraphOfGroups:
        throw UnsupportedError("no finite presentation is kept for graph-of-groups specs");
    }
    throw InputError("unknown group kind");
}

// ---------------------------------------------------------------------------
// Todd-Coxeter coset enumeration (HLT with coincidence handling)

namespace {

class CosetTable {
public:
    CosetTable(int ngens, int bound) : ngens_(ngens), bound_(bound) { newCoset(); }

    static int letter(int signedGen)
    {
        return signedGen > 0 ? 2 * (signedGen - 1) : 2 * (-signedGen - 1) + 1;
    }
    static int invLetter(int x) { return x ^ 1; }

    int newCoset()
    {
        if (static_cast<int>(table_.size()) >= bound_)
            throw ResourceExceededError("coset enumeration exceeded the bound of " +
                                            std::to_string(bound_) + " cosets",
                                        "coset bound");
        table_.emplace_back(2 * ngens_, -1);
        rep_.push_back(static_cast<int>(rep_.size()));
        return static_cast<int>(table_.size()) - 1;
    }

    int rep(int a)
    {
        while (rep_[a] != a)
            a = rep_[a] = rep_[rep_[a]];
        return a;
    }
    bool alive(int a) { return rep(a) == a; }

    int get(int a, int x) const { return table_[a][x]; }
    void set(int a, int x, int b)
    {
        table_[a][x] = b;
        table_[b][invLetter(x)] = a;
    }

    void scanAndFill(int a, const std::vector<int> &w)
    {
        if (w.empty())
            return;
        int f = a, b = a;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        while (true) {
            while (i <= j && table_[f][w[i]] >= 0)
                f = table_[f][w[i++]];
            if (i > j) {
                if (f != b)
                    coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][invLetter(w[j])] >= 0)
                b = table_[b][invLetter(w[j--])];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (j == i) {
                set(f, w[i], b);
                return;
            }
            int d = newCoset();
            set(f, w[i], d);
            f = d;
            ++i;
        }
    }

    void coincidence(int a, int b)
    {
        std::deque<int> dead;
        merge(a, b, dead);
        while (!dead.empty()) {
            int d = dead.front();
            dead.pop_front();
            for (int x = 0; x < 2 * ngens_; ++x) {
                int e = table_[d][x];
                if (e < 0)
                    continue;
                // remove the back-reference of the dying row
                if (table_[e][invLetter(x)] == d)
                    table_[e][invLetter(x)] = -1;
                int u = rep(d), v = rep(e);
                if (table_[u][x] >= 0) {
                    if (rep(table_[u][x]) != v)
                        merge(table_[u][x], v, dead);
                } else {
                    table_[u][x] = v;
                }
                u = rep(d), v = rep(e);
                if (table_[v][invLetter(x)] >= 0) {
                    if (rep(table_[v][invLetter(x)]) != u)
                        merge(table_[v][invLetter(x)], u, dead);
                } else {
                    table_[v][invLetter(x)] = u;
                }
            }
        }
    }

    // fully processes every live coset against the relators; returns when
    // the table is complete
    void hlt(const std::vector<std::vector<int>> &relatorLetters)
    {
        for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
            if (!alive(a))
                continue;
            for (const auto &r : relatorLetters) {
                scanAndFill(rep(a), r);
                if (!alive(a))
                    break;
            }
            if (!alive(a))
                continue;
            for (int x = 0; x < 2 * ngens_; ++x)
                if (table_[rep(a)][x] < 0) {
                    int d = newCoset();
                    set(rep(a), x, d);
                }
        }
    }

    bool complete()
    {
        for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
            if (!alive(a))
                continue;
            for (int x = 0; x < 2 * ngens_; ++x)
                if (table_[a][x] < 0 || !alive(rep(table_[a][x])))
                    return false;
        }
        return true;
    }

    // live cosets renumbered 0..n-1 with forward/backward generator maps
    void compress(std::vector<std::vector<int>> &fwd, std::vector<std::vector<int>> &bwd)
    {
        std::vector<int> index(table_.size(), -1);
        int n = 0;
        for (int a = 0; a < static_cast<int>(table_.size()); ++a)
            if (alive(a))
                index[a] = n++;
        fwd.assign(n, std::vector<int>(ngens_, -1));
        bwd.assign(n, std::vector<int>(ngens_, -1));
        for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
            if (!alive(a))
                continue;
            for (int g = 0; g < ngens_; ++g) {
                int t = table_[a][2 * g];
                int u = table_[a][2 * g + 1];
                fwd[index[a]][g] = t >= 0 ? index[rep(t)] : -1;
                bwd[index[a]][g] = u >= 0 ? index[rep(u)] : -1;
            }
        }
    }

private:
    void merge(int a, int b, std::deque<int> &dead)
    {
        a = rep(a);
        b = rep(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        rep_[b] = a;
        dead.push_back(b);
    }

    int ngens_;
    int bound_;
    std::vector<std::vector<int>> table_;
    std::vector<int> rep_;
};

} // namespace

std::pair<GroupElement, int> SubgroupData::membership(const GroupElement &g) const
{
    int c = cosetOf(g);
    GroupElement h = multiply(g, inverse(transversal[c]));
    return {h, c};
}

int SubgroupData::cosetOf(const GroupElement &g) const
{
    int c = 0;
    for (int l : elementWord(g)) {
        c = l > 0 ? cosetFwd_[c][l - 1] : cosetBwd_[c][-l - 1];
    }
    return c;
}

SubgroupData::FactorEntry SubgroupData::factor(int i, int j) const
{
    GroupElement prod = multiply(transversal[i], transversal[j]);
    FactorEntry fe;
    fe.k = cosetOf(prod);
    fe.h = multiply(prod, inverse(transversal[fe.k]));
    return fe;
}

SubgroupData finiteIndexData(const GroupSpecPtr &ambient,
                             const std::vector<GroupElement> &subgroupGenerators, int cosetBound)
{
    Presentation pres = presentation(ambient);
    CosetTable table(pres.numGenerators, cosetBound);

    auto toLetters = [](const Word &w) {
        std::vector<int> ls;
        ls.reserve(w.size());
        for (int l : w)
            ls.push_back(CosetTable::letter(l));
        return ls;
    };

    for (const auto &g : subgroupGenerators) {
        if (g.spec().get() != ambient.get())
            throw MismatchError("subgroup generator belongs to a different group");
        table.scanAndFill(0, toLetters(elementWord(g)));
    }
    std::vector<std::vector<int>> relatorLetters;
    for (const auto &r : pres.relators)
        relatorLetters.push_back(toLetters(r));

    if (pres.relators.empty()) {
        // free ambient group: the folded Schreier graph decides the index
        // exactly; an incomplete graph means infinite index
        if (!table.complete())
            throw InputError("subgroup has infinite index in the free group");
    } else {
        table.hlt(relatorLetters);
        if (!table.complete())
            throw ResourceExceededError("coset table incomplete", "coset bound");
    }

    SubgroupData data;
    data.ambient = ambient;
    table.compress(data.cosetFwd_, data.cosetBwd_);
    int n = static_cast<int>(data.cosetFwd_.size());
    data.index = n;

    // BFS transversal (Schreier tree), shortest representatives
    std::vector<Word> repWord(n);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::deque<int> queue{0};
    std::vector<std::vector<bool>> inTree(n, std::vector<bool>(pres.numGenerators, false));
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int g = 0; g < pres.numGenerators; ++g) {
            int d = data.cosetFwd_[c][g];
            if (!seen[d]) {
                seen[d] = true;
                repWord[d] = repWord[c];
                repWord[d].push_back(g + 1);
                inTree[c][g] = true;
                queue.push_back(d);
            }
            int e = data.cosetBwd_[c][g];
            if (!seen[e]) {
                seen[e] = true;
                repWord[e] = repWord[c];
                repWord[e].push_back(-(g + 1));
                inTree[e][g] = true; // the forward edge e --g--> c
                queue.push_back(e);
            }
        }
    }
    for (int c = 0; c < n; ++c)
        data.transversal.push_back(normalForm(ambient, repWord[c]));

    // Schreier generators: t_c g t_{c.g}^{-1} over non-tree edges
    for (int c = 0; c < n; ++c)
        for (int g = 0; g < pres.numGenerators; ++g) {
            if (inTree[c][g])
                continue;
            int d = data.cosetFwd_[c][g];
            Word w = repWord[c];
            w.push_back(g + 1);
            Word back = inverseWord(repWord[d]);
            w.insert(w.end(), back.begin(), back.end());
            GroupElement s = normalForm(ambient, w);
            if (!s.isIdentity())
                data.schreierGenerators.push_back(s);
        }
    if (ambient->kind == GroupKind::Free)
        data.subgroupFreeRank = static_cast<int>(data.schreierGenerators.size());
    return data;
}

} // namespace skewlab
