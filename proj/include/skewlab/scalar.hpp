#pragma once

#include "skewlab/error.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace skewlab {

// The base field: the rationals (p == 0) or a prime field F_p.
struct FieldKind {
    long p = 0;

    FieldKind() = default;
    static FieldKind rationals() { return FieldKind{}; }
    static FieldKind primeField(long p);

    bool isRational() const { return p == 0; }
    bool operator==(const FieldKind &o) const { return p == o.p; }
    bool operator!=(const FieldKind &o) const { return p != o.p; }

    std::string name() const { return isRational() ? "Q" : "F" + std::to_string(p); }
    static FieldKind parse(const std::string &name);

private:
    explicit FieldKind(long) {}
};

// An exact element of the base field.  Rationals are kept reduced by GMP;
// prime-field residues are kept in [0, p).
class Scalar {
public:
    Scalar() = default; // rational zero
    explicit Scalar(FieldKind k) : field_(k) {}

    static Scalar zero(FieldKind k) { return Scalar(k); }
    static Scalar one(FieldKind k) { return fromInt(k, 1); }
    static Scalar fromInt(FieldKind k, long n);
    static Scalar fromRational(const mpq_class &q); // field = Q
    // Accepts "n" or "n/d"; reduces mod p for prime fields.
    static Scalar parse(FieldKind k, const std::string &text);

    FieldKind field() const { return field_; }
    bool isZero() const { return value_ == 0; }
    bool isOne() const;

    Scalar operator+(const Scalar &o) const;
    Scalar operator-(const Scalar &o) const;
    Scalar operator*(const Scalar &o) const;
    Scalar operator/(const Scalar &o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    bool operator==(const Scalar &o) const;
    bool operator!=(const Scalar &o) const { return !(*this == o); }
    // Deterministic total order on scalars of one field (for canonical maps).
    int compare(const Scalar &o) const;

    const mpq_class &rationalValue() const { return value_; }
    std::string str() const;

private:
    void checkField(const Scalar &o) const;
    void normalize();

    FieldKind field_{};
    mpq_class value_{0}; // for F_p: integer residue in [0, p)
};

} // namespace skewlab
