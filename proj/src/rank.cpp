#include "skewlab/rank.hpp"

#include <sstream>

namespace skewlab {

namespace {

void checkRect(const TowerMatrix &m)
{
    for (const auto &row : m)
        if (row.size() != m[0].size())
            throw InputError("matrix rows have unequal lengths");
}

std::string matStr(const TowerMatrix &m)
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < m[i].size(); ++j)
            os << (j ? ", " : "") << m[i][j].str();
    }
    os << "]";
    return os.str();
}

} // namespace

TowerMatrix towerMatMul(const TowerMatrix &a, const TowerMatrix &b)
{
    if (a.empty() || b.empty())
        return {};
    checkRect(a);
    checkRect(b);
    if (a[0].size() != b.size())
        throw MismatchError("matrix shapes do not compose");
    size_t n = a.size(), k = b.size(), q = b[0].size();
    TowerPtr ring = a[0][0].ring();
    TowerMatrix out(n, std::vector<TowerElem>(q, TowerElem::zero(ring)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].isZero())
                continue;
            for (size_t j = 0; j < q; ++j)
                out[i][j] = out[i][j] + a[i][l] * b[l][j];
        }
    return out;
}

RankFunction rankOverTower(const TowerPtr &t)
{
    return RankFunction{"division-ring rank over " + t->describe(),
                       [](const TowerMatrix &m) { return towerMatrixRank(m); }};
}

int towerMatrixRankByColumns(TowerMatrix M)
{
    if (M.empty() || M[0].empty())
        return 0;
    checkRect(M);
    int rows = static_cast<int>(M.size());
    int cols = static_cast<int>(M[0].size());
    std::vector<bool> colUsed(cols, false);
    int rank = 0;
    for (int r = 0; r < rows; ++r) {
        int piv = -1;
        for (int c = 0; c < cols; ++c)
            if (!colUsed[c] && !M[r][c].isZero()) {
                piv = c;
                break;
            }
        if (piv < 0)
            continue;
        TowerElem inv = M[r][piv].inverse();
        for (int c = 0; c < cols; ++c) {
            if (c == piv || colUsed[c] || M[r][c].isZero())
                continue;
            TowerElem f = inv * M[r][c]; // column_c -= column_piv * f
            for (int i = 0; i < rows; ++i)
                M[i][c] = M[i][c] - M[i][piv] * f;
        }
        colUsed[piv] = true;
        ++rank;
    }
    return rank;
}

RankFunction pullback(const RankFunction &rk, std::function<TowerElem(const TowerElem &)> hom,
                      const std::string &homDesc)
{
    std::string prov = rk.provenance + " pulled back along " + homDesc;
    auto inner = rk.eval;
    return RankFunction{
        prov, [inner, hom](const TowerMatrix &m) {
            TowerMatrix img(m.size());
            for (size_t i = 0; i < m.size(); ++i) {
                img[i].reserve(m[i].size());
                for (size_t j = 0; j < m[i].size(); ++j) {
                    try {
                        img[i].push_back(hom(m[i][j]));
                    } catch (const Error &e) {
                        throw InputError("homomorphism failed at entry (" +
                                         std::to_string(i) + "," + std::to_string(j) +
                                         "): " + e.what());
                    }
                }
            }
            return inner(img);
        }};
}

AlgebraRankFunction
pullbackFromAlgebra(const RankFunction &rk,
                    std::function<TowerElem(const GroupAlgebraElement &)> hom,
                    const std::string &homDesc)
{
    std::string prov = rk.provenance + " pulled back along " + homDesc;
    auto inner = rk.eval;
    return AlgebraRankFunction{
        prov, [inner, hom](const GAMatrix &m) {
            TowerMatrix img(m.size());
            for (size_t i = 0; i < m.size(); ++i) {
                img[i].reserve(m[i].size());
                for (size_t j = 0; j < m[i].size(); ++j) {
                    try {
                        img[i].push_back(hom(m[i][j]));
                    } catch (const Error &e) {
                        throw InputError("homomorphism failed at entry (" +
                                         std::to_string(i) + "," + std::to_string(j) +
                                         "): " + e.what());
                    }
                }
            }
            return inner(img);
        }};
}

std::function<TowerElem(std::mt19937 &)> defaultEntrySampler(const TowerPtr &t)
{
    int gens = t->numLaurentGens();
    FieldKind f = t->field;
    return [t, gens, f](std::mt19937 &rng) {
        TowerElem e = TowerElem::zero(t);
        // mostly monomials (their inverses keep elimination cheap), some
        // monomial-plus-scalar binomials, occasional zeros; anything denser
        // makes deep-tower elimination degrees explode
        unsigned r = rng() % 8;
        int terms = r == 0 ? 0 : (r <= 5 ? 1 : 2);
        for (int i = 0; i < terms; ++i) {
            long c = static_cast<long>(rng() % 5) - 2;
            TowerElem m = TowerElem::fromScalar(t, Scalar::fromInt(f, c));
            if (i == 0)
                for (int j = 0; j < gens; ++j) {
                    int ex = static_cast<int>(rng() % 3) - 1;
                    if (ex)
                        m = m * TowerElem::generatorElem(t, j).pow(ex);
                }
            e = e + m;
        }
        return e;
    };
}

namespace {

TowerMatrix randomMatrix(const TowerPtr &t, int rows, int cols,
                         const std::function<TowerElem(std::mt19937 &)> &sample,
                         std::mt19937 &rng)
{
    TowerMatrix m(rows, std::vector<TowerElem>(cols, TowerElem::zero(t)));
    for (auto &row : m)
        for (auto &e : row)
            e = sample(rng);
    return m;
}

} // namespace

AxiomReport axiomSuite(const RankFunction &rk, const TowerPtr &t,
                       const std::function<TowerElem(std::mt19937 &)> &entrySampler,
                       int trials, unsigned seed)
{
    AxiomReport rep;
    rep.trials = trials;
    rep.seed = seed;
    std::mt19937 rng(seed);
    auto fail = [&](const std::string &axiom, const std::string &detail) {
        rep.passed = false;
        rep.violations.push_back({axiom, detail});
    };

    // spot checks: rk(1) = 1, rk(0) = 0
    TowerMatrix one1{{TowerElem::one(t)}}, zero1{{TowerElem::zero(t)}};
    if (rk(one1) != 1)
        fail("normalization", "rank of the 1x1 identity is not 1");
    if (rk(zero1) != 0)
        fail("normalization", "rank of the 1x1 zero matrix is not 0");

    for (int trial = 0; trial < trials; ++trial) {
        int m = 1 + static_cast<int>(rng() % 2);
        int n = 1 + static_cast<int>(rng() % 2);
        int p = 1 + static_cast<int>(rng() % 2);
        int q = 1 + static_cast<int>(rng() % 2);
        TowerMatrix A = randomMatrix(t, m, n, entrySampler, rng);
        TowerMatrix B = randomMatrix(t, p, q, entrySampler, rng);
        TowerMatrix C = randomMatrix(t, m, q, entrySampler, rng);
        int rA = rk(A), rB = rk(B);

        // (1) range and zero normalization
        if (rA < 0 || rA > std::min(m, n))
            fail("range", "rank outside [0, min(m,n)] for " + matStr(A));
        TowerMatrix Z(m, std::vector<TowerElem>(n, TowerElem::zero(t)));
        if (rk(Z) != 0)
            fail("range", "zero matrix has nonzero rank");

        // (2) rk(AB) <= min(rk A, rk B), with shapes matched via B' = p x q
        // replaced by an n x q sample
        TowerMatrix B2 = randomMatrix(t, n, q, entrySampler, rng);
        int rB2 = rk(B2);
        int rAB = rk(towerMatMul(A, B2));
        if (rAB > std::min(rA, rB2))
            fail("product", "rk(AB) exceeds min(rk A, rk B) for A=" + matStr(A) +
                                " B=" + matStr(B2));

        // (3) block-diagonal additivity
        TowerMatrix D(m + p, std::vector<TowerElem>(n + q, TowerElem::zero(t)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                D[i][j] = A[i][j];
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j)
                D[m + i][n + j] = B[i][j];
        if (rk(D) != rA + rB)
            fail("block-diagonal", "rk(A + B diag) != rk A + rk B for A=" + matStr(A) +
                                       " B=" + matStr(B));

        // (4) block-triangular superadditivity
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < q; ++j)
                D[i][n + j] = C[i][j];
        if (rk(D) < rA + rB)
            fail("block-triangular", "rk([A C; 0 B]) < rk A + rk B for A=" + matStr(A) +
                                         " B=" + matStr(B) + " C=" + matStr(C));
    }
    return rep;
}

CompareReport compareOnSamples(const RankFunction &rk1, const RankFunction &rk2,
                               const std::vector<TowerMatrix> &samples)
{
    CompareReport rep;
    rep.samples = static_cast<int>(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        int a = rk1(samples[i]), b = rk2(samples[i]);
        if (a < b && !rep.strictLess)
            rep.strictLess = {static_cast<int>(i), a, b};
        if (a > b && !rep.strictGreater)
            rep.strictGreater = {static_cast<int>(i), a, b};
    }
    if (rep.strictLess && rep.strictGreater)
        rep.order = SampleOrder::Incomparable;
    else if (rep.strictLess)
        rep.order = SampleOrder::LessOrEqual;
    else if (rep.strictGreater)
        rep.order = SampleOrder::GreaterOrEqual;
    else
        rep.order = SampleOrder::Equal;
    std::ostringstream os;
    os << "on " << rep.samples << " samples: " << rk1.provenance;
    switch (rep.order) {
    case SampleOrder::Equal: os << " = "; break;
    case SampleOrder::LessOrEqual: os << " <= (strictly somewhere) "; break;
    case SampleOrder::GreaterOrEqual: os << " >= (strictly somewhere) "; break;
    case SampleOrder::Incomparable: os << " incomparable with "; break;
    }
    os << rk2.provenance;
    rep.detail = os.str();
    return rep;
}

} // namespace skewlab
