#pragma once

#include "skewlab/error.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace skewlab {

struct GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

// Words are sequences of signed 1-based generator indices: +k means
// generator k, -k its inverse.
using Word = std::vector<int>;

Word inverseWord(const Word &w);
Word freeReduce(const Word &w);

class GroupElement;

// One Z-layer of a poly-Z tower: the conjugation action of the new
// generator (and of its inverse) on all generators below, given as words.
struct PolyZLayer {
    std::vector<Word> action;    // action[j] = image of generator j+1
    std::vector<Word> actionInv; // conjugation by the inverse generator
};

struct GraphOfGroupsEdge {
    int from = 0, to = 0;
    bool inTree = false;
    // Edge group and its two injective morphisms (images of edge-group
    // generators in the endpoint groups).  An absent edge group means the
    // trivial group.
    GroupSpecPtr edgeGroup;
    std::vector<Word> imagesAtTo, imagesAtFrom;
};

struct GraphOfGroupsData {
    std::vector<GroupSpecPtr> vertexGroups;
    std::vector<GraphOfGroupsEdge> edges;
    int baseVertex = 0;
};

struct FiniteExtensionData {
    GroupSpecPtr normal;
    // Finite quotient Q by multiplication table; element 0 is the identity.
    std::vector<std::vector<int>> qMult;
    std::vector<int> qInv;
    // action[q][j] = image of normal generator j+1 under conjugation by the
    // transversal unit of q; factorSet[q1][q2] is a word in the normal group.
    std::vector<std::vector<Word>> action;
    std::vector<std::vector<Word>> factorSet;
};

enum class GroupKind { Free, FreeAbelian, PolyZ, GraphOfGroups, FiniteExtension };

// Immutable description of a group in one of the supported classes.
// Construct through the make* factories, which validate the data.
struct GroupSpec : std::enable_shared_from_this<GroupSpec> {
    GroupKind kind;
    std::string name;
    std::vector<std::string> generatorNames;

    // PolyZ: layers[0] is the bottom generator (no action); layers[i]
    // carries the action of generator i+1 on generators 1..i.
    std::vector<PolyZLayer> layers;

    std::optional<GraphOfGroupsData> graph;
    std::optional<FiniteExtensionData> finiteExt;

    int rank() const { return static_cast<int>(generatorNames.size()); }
    int generatorIndex(const std::string &name) const; // 1-based, throws

    static GroupSpecPtr makeFree(int rank, std::string name = "F",
                                 std::vector<std::string> genNames = {});
    static GroupSpecPtr makeFreeAbelian(int rank, std::string name = "Zn",
                                        std::vector<std::string> genNames = {});
    static GroupSpecPtr makePolyZ(std::vector<PolyZLayer> layers, std::string name = "polyZ",
                                  std::vector<std::string> genNames = {});
    static GroupSpecPtr makeGraphOfGroups(GraphOfGroupsData data, std::string name = "gog");
    static GroupSpecPtr makeFiniteExtension(FiniteExtensionData data, std::string name = "ext");
};

// A letter of a Bass-Serre alternating form: either a vertex-group element
// or a stable letter t_e^{+-1}.
struct BassSerreLetter;

// Finite-extension pair (normal element, quotient index).
struct FiniteExtPair;

// A group element in normal form.  Equality of elements is equality of the
// stored data.
class GroupElement {
public:
    GroupElement() = default;

    const GroupSpecPtr &spec() const { return spec_; }
    bool isIdentity() const;

    // Normal-form accessors (throw if the variant does not match).
    const Word &freeWord() const;
    const std::vector<long> &exponents() const; // FreeAbelian and PolyZ
    const std::vector<BassSerreLetter> &bsLetters() const;
    const FiniteExtPair &extPair() const;

    bool operator==(const GroupElement &o) const;
    bool operator!=(const GroupElement &o) const { return !(*this == o); }
    // Canonical total order on elements of one spec.
    int compare(const GroupElement &o) const;

    std::string str() const;

    friend GroupElement identity(const GroupSpecPtr &spec);
    friend GroupElement normalForm(const GroupSpecPtr &spec, const Word &rawWord);
    friend GroupElement multiply(const GroupElement &g, const GroupElement &h);
    friend GroupElement inverse(const GroupElement &g);
    friend class GraphOfGroupsBuilder;
    friend GroupElement makeExtensionElement(const GroupSpecPtr &, const GroupElement &, int);

private:
    GroupSpecPtr spec_;
    std::variant<std::monostate, Word, std::vector<long>,
                 std::shared_ptr<const std::vector<BassSerreLetter>>,
                 std::shared_ptr<const FiniteExtPair>>
        data_;
};

struct BassSerreLetter {
    // vertex >= 0: vertex-group element; vertex < 0: stable letter of edge
    // `edge` with the given sign.
    int vertex = -1;
    GroupElement elem;
    int edge = -1;
    int sign = 0;

    static BassSerreLetter vertexElem(int v, GroupElement g);
    static BassSerreLetter stable(int edge, int sign);
    bool isStable() const { return vertex < 0; }
    bool operator==(const BassSerreLetter &o) const;
    int compare(const BassSerreLetter &o) const;
};

struct FiniteExtPair {
    GroupElement normalPart;
    int q = 0;
};

GroupElement identity(const GroupSpecPtr &spec);
GroupElement normalForm(const GroupSpecPtr &spec, const Word &rawWord);
GroupElement multiply(const GroupElement &g, const GroupElement &h);
GroupElement inverse(const GroupElement &g);
GroupElement power(const GroupElement &g, long n);

// Builds a finite-extension element (h, q) directly.
GroupElement makeExtensionElement(const GroupSpecPtr &spec, const GroupElement &normalPart, int q);

// Assembles loop-based graph-of-groups elements letter by letter.
class GraphOfGroupsBuilder {
public:
    explicit GraphOfGroupsBuilder(GroupSpecPtr spec);
    GraphOfGroupsBuilder &vertexElem(int vertex, const GroupElement &g);
    // sign +1 traverses the edge forward (from -> to), -1 backward.
    GraphOfGroupsBuilder &stable(int edge, int sign);
    GroupElement build() const; // checks the loop conditions, normalizes

private:
    GroupSpecPtr spec_;
    std::vector<BassSerreLetter> letters_;
};

// Canonical finite presentation (generators of the spec; relators), used by
// coset enumeration and the Fox complex.  Graph-of-groups specs are not
// finitely presented here and are rejected.
struct Presentation {
    int numGenerators = 0;
    std::vector<Word> relators;
};
Presentation presentation(const GroupSpecPtr &spec);

// A word over the spec's generators spelling the element (not supported for
// graph-of-groups elements).
Word elementWord(const GroupElement &g);

struct SubgroupData {
    GroupSpecPtr ambient;
    int index = 0;
    std::vector<GroupElement> transversal; // transversal[0] is the identity
    // Schreier generators of the subgroup, as ambient elements (identity
    // entries already removed).
    std::vector<GroupElement> schreierGenerators;
    // Free ambient groups: the subgroup is free of this rank.
    std::optional<int> subgroupFreeRank;

    // Writes g = h * t with h in the subgroup and t in the transversal;
    // returns (h, transversal index).
    std::pair<GroupElement, int> membership(const GroupElement &g) const;
    // Coset of g (index into `transversal`).
    int cosetOf(const GroupElement &g) const;

    // Crossed-product raw data: t_i * t_j = h_ij * t_k.
    struct FactorEntry {
        GroupElement h;
        int k = 0;
    };
    FactorEntry factor(int i, int j) const;

private:
    friend SubgroupData finiteIndexData(const GroupSpecPtr &, const std::vector<GroupElement> &,
                                        int);
    // Coset table over the ambient generators; cosets numbered as in
    // `transversal`.
    std::vector<std::vector<int>> cosetFwd_, cosetBwd_;
};

// Coset enumeration (Todd-Coxeter) for the subgroup generated by the given
// elements.  Throws ResourceExceededError when `cosetBound` is hit; this
// never claims infinite index.
SubgroupData finiteIndexData(const GroupSpecPtr &ambient,
                             const std::vector<GroupElement> &subgroupGenerators,
                             int cosetBound = 10000);

} // namespace skewlab
