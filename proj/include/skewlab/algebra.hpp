#pragma once

#include "skewlab/group.hpp"
#include "skewlab/scalar.hpp"

#include <utility>
#include <vector>

namespace skewlab {

// An element of the group algebra k[G]: a finite sum of scalar multiples of
// group elements.  Terms are kept sorted by the canonical element order with
// no zero coefficients, so equality is structural.
class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;
    GroupAlgebraElement(GroupSpecPtr spec, FieldKind field);

    static GroupAlgebraElement zero(GroupSpecPtr spec, FieldKind field);
    static GroupAlgebraElement one(GroupSpecPtr spec, FieldKind field);
    static GroupAlgebraElement monomial(const GroupElement &g, const Scalar &c);

    const GroupSpecPtr &spec() const { return spec_; }
    FieldKind field() const { return field_; }
    const std::vector<std::pair<GroupElement, Scalar>> &terms() const { return terms_; }

    bool isZero() const { return terms_.empty(); }
    int supportSize() const { return static_cast<int>(terms_.size()); }
    Scalar coefficient(const GroupElement &g) const;

    GroupAlgebraElement operator+(const GroupAlgebraElement &o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement &o) const;
    GroupAlgebraElement operator-() const;
    GroupAlgebraElement operator*(const GroupAlgebraElement &o) const;
    GroupAlgebraElement scale(const Scalar &c) const;
    GroupAlgebraElement translate(const GroupElement &g) const; // g * this

    bool operator==(const GroupAlgebraElement &o) const;
    bool operator!=(const GroupAlgebraElement &o) const { return !(*this == o); }

    // Sum of coefficients (the image under g -> 1).
    Scalar augmentation() const;

    std::string str() const;

    void addTerm(const GroupElement &g, const Scalar &c); // collects and prunes

private:
    void checkCompatible(const GroupAlgebraElement &o) const;

    GroupSpecPtr spec_;
    FieldKind field_;
    std::vector<std::pair<GroupElement, Scalar>> terms_;
};

using GAMatrix = std::vector<std::vector<GroupAlgebraElement>>;

GAMatrix gaMatMul(const GAMatrix &a, const GAMatrix &b);
bool gaMatIsZero(const GAMatrix &m);

// A finite free resolution prefix over k[G]: modules of ranks dims[0..n],
// differentials[p-1] is the matrix of d_p : C_p -> C_{p-1}, stored with
// dims[p] rows and dims[p-1] columns (acting on row vectors from the right).
struct ChainComplex {
    GroupSpecPtr spec;
    FieldKind field;
    std::vector<int> dims;
    std::vector<GAMatrix> differentials;

    int length() const { return static_cast<int>(dims.size()) - 1; }
    void verify() const; // shapes + exact d.d = 0
};

// Fox derivative of a word with respect to one generator (1-based).
GroupAlgebraElement foxDerivative(const GroupSpecPtr &spec, FieldKind field, const Word &word,
                                  int generator);

// The chain complex of the presentation 2-complex: k[G] <- k[G]^gens <- k[G]^relators,
// d_1 = (x_j - 1) and d_2 the Fox Jacobian of the relators.
ChainComplex foxComplex(const GroupSpecPtr &spec, FieldKind field);

} // namespace skewlab
