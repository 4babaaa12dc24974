#include "skewlab/scalar.hpp"

namespace skewlab {

namespace {

bool isPrime(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

FieldKind FieldKind::primeField(long p)
{
    if (!isPrime(p))
        throw InputError("characteristic must be prime, got " + std::to_string(p));
    FieldKind k;
    k.p = p;
    return k;
}

FieldKind FieldKind::parse(const std::string &name)
{
    if (name == "Q" || name == "q")
        return rationals();
    if ((name.size() > 1 && (name[0] == 'F' || name[0] == 'f')))
        return primeField(std::stol(name.substr(1)));
    throw InputError("unknown base field '" + name + "' (expected Q or F<p>)");
}

Scalar Scalar::fromInt(FieldKind k, long n)
{
    Scalar s(k);
    s.value_ = n;
    s.normalize();
    return s;
}

Scalar Scalar::fromRational(const mpq_class &q)
{
    Scalar s(FieldKind::rationals());
    s.value_ = q;
    s.value_.canonicalize();
    return s;
}

Scalar Scalar::parse(FieldKind k, const std::string &text)
{
    mpq_class q(text);
    q.canonicalize();
    Scalar s(k);
    if (k.isRational()) {
        s.value_ = q;
        return s;
    }
    // reduce n/d mod p
    mpz_class num = q.get_num(), den = q.get_den(), p(k.p);
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw InputError("denominator not invertible mod " + std::to_string(k.p));
    s.value_ = mpq_class(num * deninv);
    s.normalize();
    return s;
}

void Scalar::normalize()
{
    if (field_.isRational()) {
        value_.canonicalize();
        return;
    }
    mpz_class r = value_.get_num() % field_.p;
    if (r < 0)
        r += field_.p;
    value_ = mpq_class(r);
}

bool Scalar::isOne() const { return value_ == 1; }

void Scalar::checkField(const Scalar &o) const
{
    if (field_ != o.field_)
        throw MismatchError("scalars over different base fields: " + field_.name() + " vs " +
                            o.field_.name());
}

Scalar Scalar::operator+(const Scalar &o) const
{
    checkField(o);
    Scalar s(field_);
    s.value_ = value_ + o.value_;
    s.normalize();
    return s;
}

Scalar Scalar::operator-(const Scalar &o) const
{
    checkField(o);
    Scalar s(field_);
    s.value_ = value_ - o.value_;
    s.normalize();
    return s;
}

Scalar Scalar::operator*(const Scalar &o) const
{
    checkField(o);
    Scalar s(field_);
    s.value_ = value_ * o.value_;
    s.normalize();
    return s;
}

Scalar Scalar::operator/(const Scalar &o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const
{
    Scalar s(field_);
    s.value_ = -value_;
    s.normalize();
    return s;
}

Scalar Scalar::inverse() const
{
    if (isZero())
        throw DivisionByZeroError();
    Scalar s(field_);
    if (field_.isRational()) {
        s.value_ = 1 / value_;
        return s;
    }
    mpz_class inv, p(field_.p);
    mpz_class n = value_.get_num();
    mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    s.value_ = mpq_class(inv);
    s.normalize();
    return s;
}

bool Scalar::operator==(const Scalar &o) const
{
    return field_ == o.field_ && value_ == o.value_;
}

int Scalar::compare(const Scalar &o) const
{
    checkField(o);
    return cmp(value_, o.value_) < 0 ? -1 : (value_ == o.value_ ? 0 : 1);
}

std::string Scalar::str() const { return value_.get_str(); }

} // namespace skewlab
