#pragma once

#include "skewlab/tower.hpp"

namespace skewlab {

// The crossed product D_{kN} * Q attached to a finite-extension group spec:
// the normal subgroup's Ore-Laurent tower below, one crossed layer on top,
// and the induced embedding of the whole group algebra.
struct CrossedTower {
    GroupSpecPtr group; // FiniteExtension spec
    PolyZTower belowTower;
    TowerPtr tower;

    TowerElem embedElement(const GroupElement &g) const;
    TowerElem embedAlgebra(const GroupAlgebraElement &a) const;
};

CrossedTower buildCrossedTower(const GroupSpecPtr &spec, FieldKind field);

// Multiplies `trials` random pairs of nonzero bounded-support elements of a
// crossed-layer tower; any vanishing product is reported as a certificate.
struct FuzzReport {
    int trials = 0;
    unsigned seed = 0;
    bool zeroDivisorFound = false;
    TowerElem factorA, factorB; // set when a zero product was found
    std::string detail;
};

FuzzReport domainFuzz(const TowerPtr &tower, int trials, int supportBound, unsigned seed);

} // namespace skewlab
