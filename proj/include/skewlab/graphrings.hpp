#pragma once

#include "skewlab/tower.hpp"

#include <functional>
#include <map>

namespace skewlab {

// ---------------------------------------------------------------------------
// Based rings: an associative k-algebra with a chosen countable k-basis,
// index 0 being the identity.  Products of basis elements are supplied by
// the caller as exact coordinate vectors; the module never infers bases.
// ---------------------------------------------------------------------------

using BRElem = std::map<int, Scalar>; // basis coordinates, zeros absent

struct BasedRing {
    FieldKind field;
    std::string name;
    // coordinates of (basis i) * (basis j)
    std::function<BRElem(int, int)> mulBasis;
    // degree used for enumeration cutoffs (defaults to the index)
    std::function<int(int)> degreeOf;
    // basis indices of one degree, for basis-word enumeration
    std::function<std::vector<int>(int)> indicesOfDegree;
    std::function<std::string(int)> basisName;
};

BRElem brAdd(const BRElem &a, const BRElem &b);
BRElem brScale(const BRElem &a, const Scalar &c);
BRElem brMul(const BasedRing &r, const BRElem &a, const BRElem &b);

// ---------------------------------------------------------------------------
// Coproduct of two based rings over the base field (amalgam with trivial
// edge ring).  Basis words alternate between nonidentity basis letters of
// the two sides; collection of raw products into this basis is the linked
// normal form, unique by construction.
// ---------------------------------------------------------------------------

// (side 0/1, basis index >= 1)
using CoprodWord = std::vector<std::pair<int, int>>;

struct CoprodElem {
    std::map<CoprodWord, Scalar> terms;

    bool isZero() const { return terms.empty(); }
    std::string str(const BasedRing &b, const BasedRing &c) const;
};

CoprodElem coprodZero();
CoprodElem coprodScalar(const BasedRing &b, const Scalar &s);
// A single-side element as a coproduct element.
CoprodElem coprodInject(int side, const BRElem &x);
CoprodElem coprodAdd(const CoprodElem &x, const CoprodElem &y, const BasedRing &b,
                     const BasedRing &c);
CoprodElem coprodMul(const CoprodElem &x, const CoprodElem &y, const BasedRing &b,
                     const BasedRing &c);

// Normal form of a raw product of side-tagged factors (empty product = 1,
// empty list-of-summands = 0).
CoprodElem coprodEval(const BasedRing &b, const BasedRing &c,
                      const std::vector<std::vector<std::pair<int, BRElem>>> &summands);

// All basis words of total degree <= maxDeg, ordered length-first then
// lexicographically by (side, index).
std::vector<CoprodWord> coprodBasisWords(const BasedRing &b, const BasedRing &c, int maxDeg);

// ---------------------------------------------------------------------------
// Degenerate HNN over a based ring: both edge maps are the identity of the
// whole ring, so linked expressions collapse to powers of the stable letter
// and the ring is the untwisted Laurent extension B[t, t^-1].
// ---------------------------------------------------------------------------

struct HnnLetter {
    bool isStable = false;
    int power = 0; // stable letters: t^power
    BRElem coeff;  // ring letters
};
// Normal form: map t-exponent -> coefficient.
std::map<int, BRElem> hnnDegenerateNormalForm(const BasedRing &b,
                                              const std::vector<HnnLetter> &word);

// ---------------------------------------------------------------------------
// Graph-of-rings words: vertex rings are division-ring towers, edge rings
// are the base field (trivial).  Two presentations of the same ring:
//   - tree-based: tree stable letters equal 1 (letters omitted),
//   - base-vertex: loop words at the base vertex.
// Translation between them conjugates by tree-geodesic stable-letter
// prefixes and is exactly invertible.
// ---------------------------------------------------------------------------

struct RingEdge {
    int from = 0, to = 0;
    bool inTree = false;
};

struct GraphOfRingsSpec {
    std::vector<TowerPtr> vertexRings;
    std::vector<RingEdge> edges;
    int baseVertex = 0;

    void validate() const; // spanning tree spans, indices in range
    // tree geodesic from baseVertex to v as signed edge letters
    std::vector<std::pair<int, int>> treePath(int v) const;
};

struct RingLetter {
    bool isStable = false;
    int vertex = -1;   // ring letters
    TowerElem elem;    //
    int edge = -1;     // stable letters
    int sign = 0;      //
};

// A word in the ambient presentation; normalization merges adjacent ring
// letters of one vertex, drops identity ring letters, and cancels adjacent
// mutually inverse stable letters.
using RingWord = std::vector<RingLetter>;

RingWord normalizeRingWord(const GraphOfRingsSpec &spec, RingWord w);
bool ringWordEqual(const RingWord &a, const RingWord &b);
std::string ringWordStr(const GraphOfRingsSpec &spec, const RingWord &w);

// Checks the loop conditions (consecutive endpoints match, starts and ends
// at the base vertex); throws InputError naming the failing position.
void checkLoopWord(const GraphOfRingsSpec &spec, const RingWord &w);

// Loop word at the base vertex -> tree-based presentation (tree stable
// letters erased).
RingWord translateToTreeBased(const GraphOfRingsSpec &spec, const RingWord &loop);
// Tree-based word -> loop word at the base vertex (geodesic conjugators).
RingWord translateToBaseVertex(const GraphOfRingsSpec &spec, const RingWord &w);

// ---------------------------------------------------------------------------
// Injectivity evidence for k[group] -> graph-of-rings normal forms: free
// groups realized as an HNN loop over a one-vertex graph.
// ---------------------------------------------------------------------------

struct InjectivityReport {
    int trials = 0;
    unsigned seed = 0;
    bool allNonzero = true;
    std::string kernelWitness; // printable, when a zero image is found
    std::string detail;
};

// Maps random nonzero elements of k[F2] (bounded support) through the
// alternating normal form of the one-vertex HNN graph of rings and asserts
// nonzero images.
InjectivityReport embedInjectivityFuzz(FieldKind field, int trials, unsigned seed);

} // namespace skewlab
