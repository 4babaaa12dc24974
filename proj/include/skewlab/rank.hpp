#pragma once

#include "skewlab/tower.hpp"

#include <functional>
#include <optional>
#include <random>
#include <tuple>

namespace skewlab {

using TowerMatrix = std::vector<std::vector<TowerElem>>;

TowerMatrix towerMatMul(const TowerMatrix &a, const TowerMatrix &b);

// A matrix rank function carrying a human-readable provenance chain, so
// comparison reports are self-describing.
struct RankFunction {
    std::string provenance;
    std::function<int(const TowerMatrix &)> eval;

    int operator()(const TowerMatrix &m) const { return eval(m); }
};

// The exact division-ring rank over a tower (left row elimination).
RankFunction rankOverTower(const TowerPtr &t);

// Rank by column elimination (scalars acting from the right); over a
// division ring this agrees with the row rank — exposed for the symmetry
// check.
int towerMatrixRankByColumns(TowerMatrix M);

// Pullback along a ring homomorphism: the rank of the entrywise image.
// Evaluation failures are rethrown with the entry position attached.
RankFunction pullback(const RankFunction &rk,
                      std::function<TowerElem(const TowerElem &)> hom,
                      const std::string &homDesc);

// Pullback whose domain is a group algebra (entries mapped into the tower
// before ranking).
struct AlgebraRankFunction {
    std::string provenance;
    std::function<int(const GAMatrix &)> eval;

    int operator()(const GAMatrix &m) const { return eval(m); }
};
AlgebraRankFunction
pullbackFromAlgebra(const RankFunction &rk,
                    std::function<TowerElem(const GroupAlgebraElement &)> hom,
                    const std::string &homDesc);

// Random small tower elements (short sums of scalar multiples of Laurent
// generator monomials) for fuzzing.
std::function<TowerElem(std::mt19937 &)> defaultEntrySampler(const TowerPtr &t);

// Rank-function axiom fuzz: normalization and range, product
// submultiplicativity, block-diagonal additivity, block-triangular
// superadditivity.  Violations are collected with printable witnesses.
struct AxiomViolation {
    std::string axiom;
    std::string detail;
};
struct AxiomReport {
    int trials = 0;
    unsigned seed = 0;
    bool passed = true;
    std::vector<AxiomViolation> violations;
};
AxiomReport axiomSuite(const RankFunction &rk, const TowerPtr &t,
                       const std::function<TowerElem(std::mt19937 &)> &entrySampler,
                       int trials, unsigned seed);

// Sample-level comparison of two rank functions.  The verdict is about this
// sample only, never a global claim.
enum class SampleOrder { Equal, LessOrEqual, GreaterOrEqual, Incomparable };
struct CompareReport {
    SampleOrder order = SampleOrder::Equal;
    int samples = 0;
    // (sample index, value of rk1, value of rk2)
    std::optional<std::tuple<int, int, int>> strictLess, strictGreater;
    std::string detail;
};
CompareReport compareOnSamples(const RankFunction &rk1, const RankFunction &rk2,
                               const std::vector<TowerMatrix> &samples);

} // namespace skewlab
