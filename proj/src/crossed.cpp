#include "skewlab/crossed.hpp"

#include <random>

namespace skewlab {

CrossedTower buildCrossedTower(const GroupSpecPtr &spec, FieldKind field)
{
    if (spec->kind != GroupKind::FiniteExtension)
        throw UnsupportedError("crossed towers require a finite-extension group");
    const FiniteExtensionData &fe = *spec->finiteExt;
    PolyZTower below = buildPolyZTower(fe.normal, field);
    size_t m = fe.qMult.size();

    auto embedWord = [&](const Word &w) {
        return below.embedElement(normalForm(fe.normal, w));
    };
    std::vector<std::vector<TowerElem>> action(m), actionInv(m), factors(m);
    for (size_t q = 0; q < m; ++q) {
        // alpha_q^-1 = conj_{f(q^-1,q)^-1} alpha_{q^-1}
        TowerElem fqq = below.embedElement(
            normalForm(fe.normal, fe.factorSet[fe.qInv[q]][q]));
        TowerElem fqqInv = fqq.inverse();
        for (int j = 0; j < fe.normal->rank(); ++j) {
            action[q].push_back(embedWord(fe.action[q][j]));
            actionInv[q].push_back(fqqInv * embedWord(fe.action[fe.qInv[q]][j]) * fqq);
        }
        for (size_t r = 0; r < m; ++r)
            factors[q].push_back(embedWord(fe.factorSet[q][r]));
    }
    TowerPtr t = Tower::crossed(below.tower, fe.qMult, fe.qInv, std::move(action),
                                std::move(actionInv), std::move(factors));
    return CrossedTower{spec, std::move(below), std::move(t)};
}

TowerElem CrossedTower::embedElement(const GroupElement &g) const
{
    if (g.spec().get() != group.get())
        throw MismatchError("element does not belong to the crossed tower's group");
    const FiniteExtPair &p = g.extPair();
    std::vector<TowerElem> coords(tower->qSize(), TowerElem::zero(tower->below));
    coords[p.q] = belowTower.embedElement(p.normalPart);
    return TowerElem::fromCoords(tower, std::move(coords));
}

TowerElem CrossedTower::embedAlgebra(const GroupAlgebraElement &a) const
{
    if (a.field() != tower->field)
        throw MismatchError("base-field mismatch between algebra and tower");
    TowerElem out = TowerElem::zero(tower);
    for (auto &[g, c] : a.terms())
        out = out + liftTo(tower, TowerElem::fromScalar(tower->below, c)) * embedElement(g);
    return out;
}

namespace {

// random nonzero element with at most `supportBound` twisted-monomial terms
TowerElem randomCrossedElem(std::mt19937 &rng, const TowerPtr &t, int supportBound)
{
    int m = t->qSize();
    int n = t->below->numLaurentGens();
    FieldKind k = t->field;
    std::vector<long> coeffSample = {1, -1, 2, -2, 3};
    while (true) {
        std::vector<TowerElem> coords(m, TowerElem::zero(t->below));
        int terms = 1 + int(rng() % supportBound);
        for (int i = 0; i < terms; ++i) {
            int q = int(rng() % m);
            TowerElem mono =
                TowerElem::fromScalar(t->below, Scalar::fromInt(k, coeffSample[rng() % coeffSample.size()]));
            for (int j = 0; j < n; ++j) {
                long e = long(rng() % 5) - 2;
                if (e != 0)
                    mono = mono * TowerElem::generatorElem(t->below, j).pow(e);
            }
            coords[q] = coords[q] + mono;
        }
        TowerElem out = TowerElem::fromCoords(t, coords);
        if (!out.isZero())
            return out;
    }
}

} // namespace

FuzzReport domainFuzz(const TowerPtr &tower, int trials, int supportBound, unsigned seed)
{
    if (tower->kind != Tower::Kind::Crossed)
        throw UnsupportedError("domain fuzzing expects a crossed layer");
    if (trials < 1 || supportBound < 1)
        throw InputError("trials and support bound must be positive");
    FuzzReport rep;
    rep.trials = trials;
    rep.seed = seed;
    std::mt19937 rng(seed);
    for (int i = 0; i < trials; ++i) {
        TowerElem a = randomCrossedElem(rng, tower, supportBound);
        TowerElem b = randomCrossedElem(rng, tower, supportBound);
        if ((a * b).isZero()) {
            rep.zeroDivisorFound = true;
            rep.factorA = a;
            rep.factorB = b;
            rep.detail = "zero product at trial " + std::to_string(i) + ": (" + a.str() +
                         ") * (" + b.str() + ")";
            return rep;
        }
    }
    rep.detail = "no zero divisors found";
    return rep;
}

} // namespace skewlab
