#include "skewlab/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace skewlab {

GroupAlgebraElement::GroupAlgebraElement(GroupSpecPtr spec, FieldKind field)
    : spec_(std::move(spec)), field_(field)
{
}

GroupAlgebraElement GroupAlgebraElement::zero(GroupSpecPtr spec, FieldKind field)
{
    return GroupAlgebraElement(std::move(spec), field);
}

GroupAlgebraElement GroupAlgebraElement::one(GroupSpecPtr spec, FieldKind field)
{
    GroupAlgebraElement e(spec, field);
    e.addTerm(identity(spec), Scalar::one(field));
    return e;
}

GroupAlgebraElement GroupAlgebraElement::monomial(const GroupElement &g, const Scalar &c)
{
    GroupAlgebraElement e(g.spec(), c.field());
    e.addTerm(g, c);
    return e;
}

void GroupAlgebraElement::checkCompatible(const GroupAlgebraElement &o) const
{
    if (spec_ != o.spec_ || field_ != o.field_)
        throw MismatchError("group-algebra operands live over different rings");
}

Scalar GroupAlgebraElement::coefficient(const GroupElement &g) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const auto &t, const GroupElement &x) {
                                   return t.first.compare(x) < 0;
                               });
    if (it != terms_.end() && it->first == g)
        return it->second;
    return Scalar::zero(field_);
}

void GroupAlgebraElement::addTerm(const GroupElement &g, const Scalar &c)
{
    if (c.isZero())
        return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const auto &t, const GroupElement &x) {
                                   return t.first.compare(x) < 0;
                               });
    if (it != terms_.end() && it->first == g) {
        it->second = it->second + c;
        if (it->second.isZero())
            terms_.erase(it);
    } else {
        terms_.insert(it, {g, c});
    }
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement &o) const
{
    checkCompatible(o);
    GroupAlgebraElement out = *this;
    for (auto &[g, c] : o.terms_)
        out.addTerm(g, c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement &o) const
{
    checkCompatible(o);
    GroupAlgebraElement out = *this;
    for (auto &[g, c] : o.terms_)
        out.addTerm(g, -c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-() const
{
    GroupAlgebraElement out(spec_, field_);
    out.terms_ = terms_;
    for (auto &t : out.terms_)
        t.second = -t.second;
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement &o) const
{
    checkCompatible(o);
    GroupAlgebraElement out(spec_, field_);
    for (auto &[g, c] : terms_)
        for (auto &[h, d] : o.terms_)
            out.addTerm(multiply(g, h), c * d);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::scale(const Scalar &c) const
{
    GroupAlgebraElement out(spec_, field_);
    if (c.isZero())
        return out;
    out.terms_ = terms_;
    for (auto &t : out.terms_) {
        t.second = t.second * c;
        if (t.second.isZero())
            throw Error("internal: scalar product of nonzero field elements vanished");
    }
    return out;
}

GroupAlgebraElement GroupAlgebraElement::translate(const GroupElement &g) const
{
    GroupAlgebraElement out(spec_, field_);
    for (auto &[h, c] : terms_)
        out.addTerm(multiply(g, h), c);
    return out;
}

bool GroupAlgebraElement::operator==(const GroupAlgebraElement &o) const
{
    if (field_ != o.field_ || terms_.size() != o.terms_.size())
        return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

Scalar GroupAlgebraElement::augmentation() const
{
    Scalar s = Scalar::zero(field_);
    for (auto &[g, c] : terms_)
        s = s + c;
    return s;
}

std::string GroupAlgebraElement::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto &[g, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        out << c.str() << "*" << g.str();
    }
    return out.str();
}

GAMatrix gaMatMul(const GAMatrix &a, const GAMatrix &b)
{
    if (a.empty() || b.empty())
        return {};
    size_t inner = a[0].size();
    if (inner != b.size())
        throw MismatchError("matrix shapes do not compose");
    GAMatrix out(a.size(), std::vector<GroupAlgebraElement>(b[0].size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b[0].size(); ++j) {
            GroupAlgebraElement s = GroupAlgebraElement::zero(a[0][0].spec(), a[0][0].field());
            for (size_t k = 0; k < inner; ++k)
                s = s + a[i][k] * b[k][j];
            out[i][j] = s;
        }
    return out;
}

bool gaMatIsZero(const GAMatrix &m)
{
    for (auto &row : m)
        for (auto &e : row)
            if (!e.isZero())
                return false;
    return true;
}

void ChainComplex::verify() const
{
    if (dims.empty() || differentials.size() + 1 != dims.size())
        throw InputError("chain complex has inconsistent lengths");
    for (size_t p = 0; p + 1 < dims.size(); ++p) {
        const GAMatrix &m = differentials[p];
        if (static_cast<int>(m.size()) != dims[p + 1])
            throw InputError("differential row count mismatch in degree " + std::to_string(p + 1));
        for (auto &row : m)
            if (static_cast<int>(row.size()) != dims[p])
                throw InputError("differential column count mismatch in degree " +
                                 std::to_string(p + 1));
    }
    for (size_t p = 0; p + 1 < differentials.size(); ++p)
        if (!gaMatIsZero(gaMatMul(differentials[p + 1], differentials[p])))
            throw InputError("composite differential is nonzero in degree " +
                             std::to_string(p + 2));
}

GroupAlgebraElement foxDerivative(const GroupSpecPtr &spec, FieldKind field, const Word &word,
                                  int generator)
{
    // d(uv) = du + u dv;  d(x) = 1, d(x^-1) = -x^-1 for x the generator,
    // other letters contribute nothing.
    GroupAlgebraElement out = GroupAlgebraElement::zero(spec, field);
    GroupElement prefix = identity(spec);
    Scalar one = Scalar::one(field);
    for (int s : word) {
        if (s == generator) {
            out.addTerm(prefix, one);
        } else if (s == -generator) {
            out.addTerm(multiply(prefix, normalForm(spec, {s})), -one);
        }
        prefix = multiply(prefix, normalForm(spec, {s}));
    }
    return out;
}

ChainComplex foxComplex(const GroupSpecPtr &spec, FieldKind field)
{
    Presentation pres = presentation(spec);
    for (size_t i = 0; i < pres.relators.size(); ++i) {
        const Word &r = pres.relators[i];
        Word red = freeReduce(r);
        if (red != r)
            throw InputError("relator " + std::to_string(i) + " is not freely reduced");
        if (!r.empty() && r.front() == -r.back())
            throw InputError("relator " + std::to_string(i) + " is not cyclically reduced");
    }

    ChainComplex cx;
    cx.spec = spec;
    cx.field = field;
    cx.dims = {1, pres.numGenerators};
    Scalar one = Scalar::one(field);

    GAMatrix d1(pres.numGenerators, std::vector<GroupAlgebraElement>(1));
    for (int j = 0; j < pres.numGenerators; ++j) {
        GroupAlgebraElement e = GroupAlgebraElement::zero(spec, field);
        e.addTerm(normalForm(spec, {j + 1}), one);
        e.addTerm(identity(spec), -one);
        d1[j][0] = e;
    }
    cx.differentials.push_back(std::move(d1));

    if (!pres.relators.empty()) {
        cx.dims.push_back(static_cast<int>(pres.relators.size()));
        GAMatrix d2(pres.relators.size(),
                    std::vector<GroupAlgebraElement>(pres.numGenerators));
        for (size_t i = 0; i < pres.relators.size(); ++i)
            for (int j = 0; j < pres.numGenerators; ++j)
                d2[i][j] = foxDerivative(spec, field, pres.relators[i], j + 1);
        cx.differentials.push_back(std::move(d2));
    }
    cx.verify();
    return cx;
}

} // namespace skewlab
