#pragma once

#include "skewlab/algebra.hpp"
#include "skewlab/group.hpp"
#include "skewlab/scalar.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace skewlab {

struct Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class TowerElem;
struct OreFraction;

// An inductively built computable division ring:
//   Base(k)  |  OreLaurent: Frac(below[t^{+-1}; sigma])  |  Crossed: below * Q.
// Towers are immutable and shared; elements carry a pointer to their tower.
struct Tower : std::enable_shared_from_this<Tower> {
    enum class Kind { Base, OreLaurent, Crossed };

    Kind kind = Kind::Base;
    FieldKind field;
    TowerPtr below;

    // OreLaurent data.  sigma is an automorphism of `below`, given by the
    // images of below's Laurent generators (bottom-up); the inverse is
    // supplied, not inferred, and the composition is verified.
    std::string varName;
    std::vector<TowerElem> sigmaImages, sigmaInvImages;

    // Crossed data: finite group Q by multiplication table (0 = identity),
    // action images per q of below's Laurent generators, normalized factor
    // set with values in below.
    std::vector<std::vector<int>> qMult;
    std::vector<int> qInv;
    std::vector<std::vector<TowerElem>> actionImages, actionInvImages;
    std::vector<std::vector<TowerElem>> factorSet;

    int numLaurentGens() const;
    std::vector<std::string> generatorNames() const;
    int qSize() const { return static_cast<int>(qMult.size()); }
    std::string describe() const;

    static TowerPtr base(FieldKind f);
    static TowerPtr oreLaurent(TowerPtr below, std::string varName,
                               std::vector<TowerElem> sigmaImages,
                               std::vector<TowerElem> sigmaInvImages);
    static TowerPtr crossed(TowerPtr below, std::vector<std::vector<int>> qMult,
                            std::vector<int> qInv,
                            std::vector<std::vector<TowerElem>> actionImages,
                            std::vector<std::vector<TowerElem>> actionInvImages,
                            std::vector<std::vector<TowerElem>> factorSet);
};

// Laurent polynomial in the variable of an OreLaurent tower, coefficients in
// the tower below.  Multiplication uses t * c = sigma(c) * t.
struct SkewPoly {
    TowerPtr ring; // the OreLaurent tower owning the variable
    std::map<int, TowerElem> coeffs; // degree -> nonzero coefficient

    bool isZero() const { return coeffs.empty(); }
    int degMin() const;
    int degMax() const;
    void prune();

    static SkewPoly zero(TowerPtr ring);
    static SkewPoly constant(TowerPtr ring, const TowerElem &c); // c * t^0
    static SkewPoly variable(TowerPtr ring, int power = 1);

    SkewPoly operator+(const SkewPoly &o) const;
    SkewPoly operator-(const SkewPoly &o) const;
    SkewPoly operator-() const;
    SkewPoly operator*(const SkewPoly &o) const;
    bool operator==(const SkewPoly &o) const;
    bool operator!=(const SkewPoly &o) const { return !(*this == o); }

    // p = t^m * result with result supported in degrees >= 0, m = degMin.
    SkewPoly shiftToPolynomial(int &m) const;
    SkewPoly shiftedBy(int m) const; // t^m * p

    std::string str() const;
};

// Division with the quotient on the right: a = b*q + r, deg r < deg b.
// Preserves common left divisors; inputs must be in polynomial form.
std::pair<SkewPoly, SkewPoly> divmodRight(const SkewPoly &a, const SkewPoly &b);
// Division with the quotient on the left: a = q*b + r, deg r < deg b.
std::pair<SkewPoly, SkewPoly> divmodLeft(const SkewPoly &a, const SkewPoly &b);

// Greatest common left divisor (Euclid with right quotients); defined up to
// a right unit.
SkewPoly gcld(SkewPoly a, SkewPoly b);
// Least common left multiple cofactors: returns (u, v) with u*a = v*b != 0.
std::pair<SkewPoly, SkewPoly> lclmCofactors(const SkewPoly &a, const SkewPoly &b);
// Common right multiple cofactors: returns (x, y) with a*x = b*y != 0.
std::pair<SkewPoly, SkewPoly> crmCofactors(const SkewPoly &a, const SkewPoly &b);

// A left fraction den^-1 * num in canonical form: no common left divisor of
// positive degree, den a monic polynomial with nonzero constant term.
// Equality of values is equality of the stored data.
struct OreFraction {
    SkewPoly den, num;

    static OreFraction make(SkewPoly den, SkewPoly num); // canonicalizes
    bool isZero() const { return num.isZero(); }
    std::string str() const;
    bool operator==(const OreFraction &o) const { return den == o.den && num == o.num; }
};

// Common denominator: d^-1 * nf == f and d^-1 * ng == g with d a left-LCM
// of the two denominators.
struct CommonDenominator {
    SkewPoly d, nf, ng;
};
CommonDenominator oreCommonDenominator(const OreFraction &f, const OreFraction &g);

// Conversion to a right fraction: value == num * den^-1.
struct RightFraction {
    SkewPoly num, den;
};
RightFraction toRightFraction(const OreFraction &f);

// Zero-divisor discovery in a crossed layer: carries the kernel witness
// (coordinates of a nonzero w with w * x = 0).
struct ZeroDivisorWitness;

// An element of a Tower: a Scalar (Base), an OreFraction (OreLaurent), or a
// coordinate vector over Q (Crossed, value = sum coords[q] * u_q).
class TowerElem {
public:
    TowerElem() = default;

    static TowerElem zero(const TowerPtr &t);
    static TowerElem one(const TowerPtr &t);
    static TowerElem fromScalar(const TowerPtr &t, const Scalar &s);
    // The i-th Laurent generator (0-based, bottom-up) as an element of t.
    static TowerElem generatorElem(const TowerPtr &t, int i);
    static TowerElem fromFraction(const TowerPtr &t, OreFraction f);
    static TowerElem fromCoords(const TowerPtr &t, std::vector<TowerElem> coords);
    // The crossed unit u_q.
    static TowerElem crossedUnit(const TowerPtr &t, int q);

    const TowerPtr &ring() const { return ring_; }
    bool isZero() const;
    bool isOne() const;

    const Scalar &scalar() const;
    const OreFraction &fraction() const;
    const std::vector<TowerElem> &coords() const;

    TowerElem operator+(const TowerElem &o) const;
    TowerElem operator-(const TowerElem &o) const;
    TowerElem operator-() const;
    TowerElem operator*(const TowerElem &o) const;
    TowerElem inverse() const; // throws DivisionByZeroError on 0
    TowerElem pow(long n) const;

    bool operator==(const TowerElem &o) const;
    bool operator!=(const TowerElem &o) const { return !(*this == o); }

    std::string str() const;

private:
    void checkRing(const TowerElem &o) const;

    TowerPtr ring_;
    std::variant<std::monostate, Scalar, std::shared_ptr<const OreFraction>,
                 std::shared_ptr<const std::vector<TowerElem>>>
        data_;
};

struct ZeroDivisorWitness {
    bool found = false;
    TowerElem left; // nonzero, with left * x == 0
};

// Raised when inversion in a crossed layer hits a singular left-regular
// representation; the witness is a genuine zero divisor.
struct ZeroDivisorError : Error {
    TowerElem witness;
    ZeroDivisorError(const std::string &m, TowerElem w) : Error(m), witness(std::move(w)) {}
};

// Evaluation homomorphism: x lives in a tower whose Laurent generators get
// the supplied images (elements of `target`); base scalars map identically.
TowerElem evalHom(const TowerPtr &target, const std::vector<TowerElem> &images,
                  const TowerElem &x);

// sigma^n applied to an element of the tower below an OreLaurent layer.
TowerElem applySigmaPow(const TowerPtr &laurent, const TowerElem &x, long n);

// Embeds an element of an iterated `below` of target into target.
TowerElem liftTo(const TowerPtr &target, const TowerElem &x);

// Crossed-layer inverse that reports a kernel vector instead of throwing
// when the left-regular representation is singular.
ZeroDivisorWitness crossedInverseOrWitness(const TowerElem &x, TowerElem &out);

// Left row rank of a matrix over a tower (Gaussian elimination with exact
// division-ring arithmetic); left = eliminate with row operations whose
// scalars act from the left.
int towerMatrixRank(std::vector<std::vector<TowerElem>> M);

// Degree ceiling for Laurent polynomials appearing in fraction arithmetic;
// exceeding it raises ResourceExceededError.
void setDegreeCap(int cap);
int degreeCap();

// The iterated Ore-Laurent tower of a poly-Z (or free-abelian, or Z) group,
// one Laurent layer per generator, with the group-algebra embedding.
struct PolyZTower {
    GroupSpecPtr group;
    TowerPtr tower;

    TowerElem embedElement(const GroupElement &g) const;
    TowerElem embedAlgebra(const GroupAlgebraElement &a) const;
};
PolyZTower buildPolyZTower(const GroupSpecPtr &spec, FieldKind field);

// Independence witness reports for the tower of a poly-Z group.
struct WitnessReport {
    bool supported = true;
    bool independent = false;
    std::string detail;
};

// Checks that {t^i : |i| <= range} is left linearly independent over the
// layer generated by the subgroup (which must lie below t's layer).
WitnessReport hfWitnessCheck(const PolyZTower &pt, const std::vector<GroupElement> &subgroupGens,
                             const GroupElement &t, int range);
// Checks that the transversal elements are left linearly independent over
// the division ring of the finite-index subgroup (lower generators plus a
// power of the top generator).
WitnessReport lWitnessCheck(const PolyZTower &pt, const std::vector<GroupElement> &subgroupGens,
                            const std::vector<GroupElement> &transversal);

} // namespace skewlab
