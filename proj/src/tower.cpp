#include "skewlab/tower.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace skewlab {

namespace {

std::atomic<int> g_degreeCap{512};

void checkSameRing(const TowerPtr &a, const TowerPtr &b)
{
    if (a.get() != b.get())
        throw MismatchError("tower elements live in different towers");
}

} // namespace

void setDegreeCap(int cap)
{
    if (cap < 1)
        throw InputError("degree cap must be positive");
    g_degreeCap = cap;
}

int degreeCap() { return g_degreeCap; }

// ---------------------------------------------------------------------------
// Tower

int Tower::numLaurentGens() const
{
    switch (kind) {
    case Kind::Base:
        return 0;
    case Kind::OreLaurent:
        return below->numLaurentGens() + 1;
    case Kind::Crossed:
        return below->numLaurentGens();
    }
    return 0;
}

std::vector<std::string> Tower::generatorNames() const
{
    if (kind == Kind::Base)
        return {};
    auto names = below->generatorNames();
    if (kind == Kind::OreLaurent)
        names.push_back(varName);
    return names;
}

std::string Tower::describe() const
{
    switch (kind) {
    case Kind::Base:
        return field.name();
    case Kind::OreLaurent:
        return "Ore(" + below->describe() + "[" + varName + "^±1])";
    case Kind::Crossed:
        return below->describe() + "*Q" + std::to_string(qSize());
    }
    return "?";
}

TowerPtr Tower::base(FieldKind f)
{
    auto t = std::make_shared<Tower>();
    t->kind = Kind::Base;
    t->field = f;
    return t;
}

TowerPtr Tower::oreLaurent(TowerPtr below, std::string varName,
                           std::vector<TowerElem> sigmaImages,
                           std::vector<TowerElem> sigmaInvImages)
{
    if (!below)
        throw InputError("missing coefficient ring");
    int n = below->numLaurentGens();
    if (static_cast<int>(sigmaImages.size()) != n ||
        static_cast<int>(sigmaInvImages.size()) != n)
        throw InputError("automorphism must supply one image per generator");
    auto t = std::make_shared<Tower>();
    t->kind = Kind::OreLaurent;
    t->field = below->field;
    t->below = below;
    t->varName = std::move(varName);
    t->sigmaImages = std::move(sigmaImages);
    t->sigmaInvImages = std::move(sigmaInvImages);
    // sigma o sigmaInv = id and the reverse, on every generator
    for (int i = 0; i < n; ++i) {
        TowerElem g = TowerElem::generatorElem(below, i);
        if (evalHom(below, t->sigmaInvImages, t->sigmaImages[i]) != g ||
            evalHom(below, t->sigmaImages, t->sigmaInvImages[i]) != g)
            throw InputError("sigma and its inverse do not compose to the identity on generator " +
                             std::to_string(i));
    }
    return t;
}

TowerPtr Tower::crossed(TowerPtr below, std::vector<std::vector<int>> qMult,
                        std::vector<int> qInv,
                        std::vector<std::vector<TowerElem>> actionImages,
                        std::vector<std::vector<TowerElem>> actionInvImages,
                        std::vector<std::vector<TowerElem>> factorSet)
{
    if (!below)
        throw InputError("missing coefficient ring");
    size_t m = qMult.size();
    if (m == 0 || qInv.size() != m || actionImages.size() != m ||
        actionInvImages.size() != m || factorSet.size() != m)
        throw InputError("crossed data sizes disagree");
    for (auto &row : qMult)
        if (row.size() != m)
            throw InputError("quotient multiplication table is not square");
    for (size_t q = 0; q < m; ++q) {
        if (qMult[0][q] != static_cast<int>(q) || qMult[q][0] != static_cast<int>(q))
            throw InputError("quotient element 0 is not an identity");
        if (qMult[q][qInv[q]] != 0 || qMult[qInv[q]][q] != 0)
            throw InputError("quotient inverse table is wrong");
        if (factorSet[q].size() != m)
            throw InputError("factor set is not square");
    }
    auto t = std::make_shared<Tower>();
    t->kind = Kind::Crossed;
    t->field = below->field;
    t->below = below;
    t->qMult = std::move(qMult);
    t->qInv = std::move(qInv);
    t->actionImages = std::move(actionImages);
    t->actionInvImages = std::move(actionInvImages);
    t->factorSet = std::move(factorSet);

    int n = below->numLaurentGens();
    auto alpha = [&](int q, const TowerElem &x) { return evalHom(below, t->actionImages[q], x); };
    TowerElem one = TowerElem::one(below);
    for (size_t q = 0; q < m; ++q) {
        if (t->factorSet[0][q] != one || t->factorSet[q][0] != one)
            throw InputError("factor set is not normalized");
        for (int i = 0; i < n; ++i) {
            TowerElem g = TowerElem::generatorElem(below, i);
            if (evalHom(below, t->actionInvImages[q], t->actionImages[q][i]) != g)
                throw InputError("crossed action inverse is wrong");
        }
    }
    // compatibility: alpha_q1 alpha_q2 = conj_{f(q1,q2)} alpha_{q1 q2}
    for (size_t q1 = 0; q1 < m; ++q1)
        for (size_t q2 = 0; q2 < m; ++q2) {
            const TowerElem &f12 = t->factorSet[q1][q2];
            TowerElem f12i = f12.inverse();
            int q12 = t->qMult[q1][q2];
            for (int i = 0; i < n; ++i) {
                TowerElem g = TowerElem::generatorElem(below, i);
                if (alpha(int(q1), alpha(int(q2), g)) != f12 * alpha(q12, g) * f12i)
                    throw InputError("crossed action/factor-set compatibility fails");
            }
            // cocycle: f(q1,q2) f(q1 q2, q3) = alpha_q1(f(q2,q3)) f(q1, q2 q3)
            for (size_t q3 = 0; q3 < m; ++q3) {
                int q23 = t->qMult[q2][q3];
                if (f12 * t->factorSet[q12][q3] !=
                    alpha(int(q1), t->factorSet[q2][q3]) * t->factorSet[q1][q23])
                    throw InputError("factor set fails the cocycle condition");
            }
        }
    return t;
}

// ---------------------------------------------------------------------------
// SkewPoly

int SkewPoly::degMin() const
{
    if (coeffs.empty())
        throw Error("degree of the zero polynomial");
    return coeffs.begin()->first;
}

int SkewPoly::degMax() const
{
    if (coeffs.empty())
        throw Error("degree of the zero polynomial");
    return coeffs.rbegin()->first;
}

void SkewPoly::prune()
{
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second.isZero() ? coeffs.erase(it) : std::next(it);
    if (!coeffs.empty() && degMax() - degMin() > g_degreeCap)
        throw ResourceExceededError("polynomial degree span exceeded the ceiling",
                                    "degree cap " + std::to_string(g_degreeCap.load()));
}

SkewPoly SkewPoly::zero(TowerPtr ring) { return SkewPoly{std::move(ring), {}}; }

SkewPoly SkewPoly::constant(TowerPtr ring, const TowerElem &c)
{
    SkewPoly p{std::move(ring), {}};
    if (!c.isZero())
        p.coeffs[0] = c;
    return p;
}

SkewPoly SkewPoly::variable(TowerPtr ring, int power)
{
    SkewPoly p{ring, {}};
    p.coeffs[power] = TowerElem::one(ring->below);
    return p;
}

SkewPoly SkewPoly::operator+(const SkewPoly &o) const
{
    checkSameRing(ring, o.ring);
    SkewPoly out = *this;
    for (auto &[d, c] : o.coeffs) {
        auto it = out.coeffs.find(d);
        if (it == out.coeffs.end())
            out.coeffs[d] = c;
        else
            it->second = it->second + c;
    }
    out.prune();
    return out;
}

SkewPoly SkewPoly::operator-() const
{
    SkewPoly out = *this;
    for (auto &[d, c] : out.coeffs)
        c = -c;
    return out;
}

SkewPoly SkewPoly::operator-(const SkewPoly &o) const { return *this + (-o); }

SkewPoly SkewPoly::operator*(const SkewPoly &o) const
{
    checkSameRing(ring, o.ring);
    SkewPoly out = SkewPoly::zero(ring);
    for (auto &[i, a] : coeffs)
        for (auto &[j, b] : o.coeffs) {
            // (a t^i)(b t^j) = a sigma^i(b) t^{i+j}
            TowerElem c = a * applySigmaPow(ring, b, i);
            if (c.isZero())
                continue;
            auto it = out.coeffs.find(i + j);
            if (it == out.coeffs.end())
                out.coeffs[i + j] = c;
            else
                it->second = it->second + c;
        }
    out.prune();
    return out;
}

bool SkewPoly::operator==(const SkewPoly &o) const
{
    if (coeffs.size() != o.coeffs.size())
        return false;
    auto it = o.coeffs.begin();
    for (auto &[d, c] : coeffs) {
        if (d != it->first || c != it->second)
            return false;
        ++it;
    }
    return true;
}

SkewPoly SkewPoly::shiftToPolynomial(int &m) const
{
    if (coeffs.empty()) {
        m = 0;
        return *this;
    }
    m = degMin();
    return shiftedBy(-m);
}

SkewPoly SkewPoly::shiftedBy(int m) const
{
    // t^m * p = sum sigma^m(c_i) t^{i+m}
    SkewPoly out = SkewPoly::zero(ring);
    for (auto &[d, c] : coeffs) {
        TowerElem s = applySigmaPow(ring, c, m);
        if (!s.isZero())
            out.coeffs[d + m] = s;
    }
    return out;
}

std::string SkewPoly::str() const
{
    if (coeffs.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto &[d, c] : coeffs) {
        if (!first)
            out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        if (d != 0)
            out << "*" << ring->varName << "^" << d;
    }
    return out.str();
}

std::pair<SkewPoly, SkewPoly> divmodRight(const SkewPoly &a, const SkewPoly &b)
{
    if (b.isZero())
        throw DivisionByZeroError("polynomial division by zero");
    if (!b.coeffs.empty() && b.degMin() < 0)
        throw Error("internal: divisor not in polynomial form");
    SkewPoly q = SkewPoly::zero(a.ring), r = a;
    int db = b.degMax();
    const TowerElem btopInv = b.coeffs.rbegin()->second.inverse();
    while (!r.isZero() && r.degMax() >= db) {
        int da = r.degMax();
        // b * (qc t^{da-db}) has leading coefficient btop sigma^{db}(qc)
        TowerElem qc = applySigmaPow(a.ring, btopInv * r.coeffs.rbegin()->second, -db);
        SkewPoly term = SkewPoly::zero(a.ring);
        term.coeffs[da - db] = qc;
        r = r - b * term;
        q = q + term;
        if (!r.isZero() && r.degMax() >= da)
            throw Error("internal: skew division failed to reduce the degree");
    }
    return {q, r};
}

std::pair<SkewPoly, SkewPoly> divmodLeft(const SkewPoly &a, const SkewPoly &b)
{
    if (b.isZero())
        throw DivisionByZeroError("polynomial division by zero");
    SkewPoly q = SkewPoly::zero(a.ring), r = a;
    int db = b.degMax();
    const TowerElem &btop = b.coeffs.rbegin()->second;
    while (!r.isZero() && r.degMax() >= db) {
        int da = r.degMax();
        // (qc t^{da-db}) * b has leading coefficient qc sigma^{da-db}(btop)
        TowerElem qc = r.coeffs.rbegin()->second * applySigmaPow(a.ring, btop, da - db).inverse();
        SkewPoly term = SkewPoly::zero(a.ring);
        term.coeffs[da - db] = qc;
        r = r - term * b;
        q = q + term;
        if (!r.isZero() && r.degMax() >= da)
            throw Error("internal: skew division failed to reduce the degree");
    }
    return {q, r};
}

SkewPoly gcld(SkewPoly a, SkewPoly b)
{
    while (!b.isZero()) {
        SkewPoly r = divmodRight(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::pair<SkewPoly, SkewPoly> lclmCofactors(const SkewPoly &a, const SkewPoly &b)
{
    if (a.isZero() || b.isZero())
        throw DivisionByZeroError("LCM of a zero polynomial");
    SkewPoly one = SkewPoly::constant(a.ring, TowerElem::one(a.ring->below));
    SkewPoly r0 = a, u0 = one, v0 = SkewPoly::zero(a.ring);
    SkewPoly r1 = b, u1 = SkewPoly::zero(a.ring), v1 = one;
    while (!r1.isZero()) {
        auto [q, r2] = divmodLeft(r0, r1);
        SkewPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = std::move(r1); u0 = std::move(u1); v0 = std::move(v1);
        r1 = std::move(r2); u1 = std::move(u2); v1 = std::move(v2);
    }
    // 0 = u1 a + v1 b
    if (u1.isZero() || v1.isZero())
        throw Error("internal: degenerate LCM cofactors");
    return {u1, -v1};
}

std::pair<SkewPoly, SkewPoly> crmCofactors(const SkewPoly &a, const SkewPoly &b)
{
    if (a.isZero() || b.isZero())
        throw DivisionByZeroError("common multiple of a zero polynomial");
    SkewPoly one = SkewPoly::constant(a.ring, TowerElem::one(a.ring->below));
    SkewPoly r0 = a, x0 = one, y0 = SkewPoly::zero(a.ring);
    SkewPoly r1 = b, x1 = SkewPoly::zero(a.ring), y1 = one;
    while (!r1.isZero()) {
        auto [q, r2] = divmodRight(r0, r1);
        SkewPoly x2 = x0 - x1 * q, y2 = y0 - y1 * q;
        r0 = std::move(r1); x0 = std::move(x1); y0 = std::move(y1);
        r1 = std::move(r2); x1 = std::move(x2); y1 = std::move(y2);
    }
    // 0 = a x1 + b y1
    if (x1.isZero() || y1.isZero())
        throw Error("internal: degenerate common-multiple cofactors");
    return {x1, -y1};
}

// ---------------------------------------------------------------------------
// OreFraction

namespace {

bool polyIsOne(const SkewPoly &p)
{
    return p.coeffs.size() == 1 && p.coeffs.begin()->first == 0 &&
           p.coeffs.begin()->second.isOne();
}

// Left-multiplies a polynomial by a constant from the coefficient ring.
SkewPoly constTimes(const TowerElem &c, const SkewPoly &p)
{
    SkewPoly out = SkewPoly::zero(p.ring);
    for (auto &[d, x] : p.coeffs) {
        TowerElem y = c * x;
        if (!y.isZero())
            out.coeffs[d] = y;
    }
    return out;
}

} // namespace

OreFraction OreFraction::make(SkewPoly den, SkewPoly num)
{
    if (den.isZero())
        throw DivisionByZeroError("fraction with zero denominator");
    TowerPtr ring = den.ring;
    checkSameRing(ring, num.ring);
    SkewPoly one = SkewPoly::constant(ring, TowerElem::one(ring->below));
    if (num.isZero())
        return OreFraction{one, SkewPoly::zero(ring)};

    if (!polyIsOne(den)) {
        // shift both by a common left power of t so both are polynomials
        int m = std::min(den.degMin(), num.degMin());
        if (m != 0) {
            den = den.shiftedBy(-m);
            num = num.shiftedBy(-m);
        }
        // cancel the greatest common left divisor
        SkewPoly g = gcld(den, num);
        if (g.degMax() > 0 || g.degMin() > 0) {
            auto [qd, rd] = divmodRight(den, g);
            auto [qn, rn] = divmodRight(num, g);
            if (!rd.isZero() || !rn.isZero())
                throw Error("internal: GCD does not divide");
            den = std::move(qd);
            num = std::move(qn);
        }
        // make the denominator's lowest degree 0
        int e = den.degMin();
        if (e != 0) {
            den = den.shiftedBy(-e);
            num = num.shiftedBy(-e);
        }
        // monic leading coefficient
        const TowerElem &lead = den.coeffs.rbegin()->second;
        if (!lead.isOne()) {
            TowerElem u = lead.inverse();
            den = constTimes(u, den);
            num = constTimes(u, num);
        }
    }
    return OreFraction{std::move(den), std::move(num)};
}

std::string OreFraction::str() const
{
    if (num.isZero())
        return "0";
    if (polyIsOne(den))
        return num.str();
    return "(" + den.str() + ")^-1 * (" + num.str() + ")";
}

CommonDenominator oreCommonDenominator(const OreFraction &f, const OreFraction &g)
{
    checkSameRing(f.den.ring, g.den.ring);
    if (f.den == g.den)
        return {f.den, f.num, g.num};
    auto [u, v] = lclmCofactors(f.den, g.den);
    return {u * f.den, u * f.num, v * g.num};
}

RightFraction toRightFraction(const OreFraction &f)
{
    TowerPtr ring = f.den.ring;
    if (f.num.isZero())
        return {SkewPoly::zero(ring), SkewPoly::constant(ring, TowerElem::one(ring->below))};
    // Write num = numConj t^c with numConj = t^c (t^-c num) t^-c polynomial,
    // then solve den x = numConj y; multiplying the cofactor identity by the
    // right unit t^-c gives num (t^-c y) = den x, so value = x (t^-c y)^-1.
    int c = 0;
    SkewPoly numPoly = f.num.shiftToPolynomial(c); // num = t^c numPoly
    SkewPoly numConj = SkewPoly::zero(ring);       // t^c numPoly t^-c
    for (auto &[d, e] : numPoly.coeffs) {
        TowerElem s = applySigmaPow(ring, e, c);
        if (!s.isZero())
            numConj.coeffs[d] = s;
    }
    auto [x, y] = crmCofactors(f.den, numConj);
    SkewPoly X = x, Y = y.shiftedBy(-c);
    // Right-multiply both by t^k (a plain degree translation) so the
    // denominator is a polynomial with nonzero constant term.
    if (!Y.isZero() && Y.degMin() != 0) {
        int k = -Y.degMin();
        SkewPoly Xs = SkewPoly::zero(ring), Ys = SkewPoly::zero(ring);
        for (auto &[d, e] : X.coeffs)
            Xs.coeffs[d + k] = e;
        for (auto &[d, e] : Y.coeffs)
            Ys.coeffs[d + k] = e;
        X = std::move(Xs);
        Y = std::move(Ys);
    }
    return {X, Y};
}

// ---------------------------------------------------------------------------
// TowerElem

TowerElem TowerElem::zero(const TowerPtr &t)
{
    TowerElem e;
    e.ring_ = t;
    switch (t->kind) {
    case Tower::Kind::Base:
        e.data_ = Scalar::zero(t->field);
        break;
    case Tower::Kind::OreLaurent: {
        SkewPoly one = SkewPoly::constant(t, TowerElem::one(t->below));
        e.data_ = std::make_shared<const OreFraction>(OreFraction{one, SkewPoly::zero(t)});
        break;
    }
    case Tower::Kind::Crossed:
        e.data_ = std::make_shared<const std::vector<TowerElem>>(
            std::vector<TowerElem>(t->qSize(), TowerElem::zero(t->below)));
        break;
    }
    return e;
}

TowerElem TowerElem::one(const TowerPtr &t)
{
    return fromScalar(t, Scalar::one(t->field));
}

TowerElem TowerElem::fromScalar(const TowerPtr &t, const Scalar &s)
{
    TowerElem e;
    e.ring_ = t;
    switch (t->kind) {
    case Tower::Kind::Base:
        e.data_ = s;
        break;
    case Tower::Kind::OreLaurent: {
        SkewPoly one = SkewPoly::constant(t, TowerElem::one(t->below));
        SkewPoly num = SkewPoly::constant(t, TowerElem::fromScalar(t->below, s));
        e.data_ = std::make_shared<const OreFraction>(OreFraction{std::move(one), std::move(num)});
        break;
    }
    case Tower::Kind::Crossed: {
        std::vector<TowerElem> coords(t->qSize(), TowerElem::zero(t->below));
        coords[0] = TowerElem::fromScalar(t->below, s);
        e.data_ = std::make_shared<const std::vector<TowerElem>>(std::move(coords));
        break;
    }
    }
    return e;
}

TowerElem TowerElem::generatorElem(const TowerPtr &t, int i)
{
    int n = t->numLaurentGens();
    if (i < 0 || i >= n)
        throw InputError("tower generator index out of range");
    if (t->kind == Tower::Kind::OreLaurent && i == n - 1) {
        SkewPoly one = SkewPoly::constant(t, TowerElem::one(t->below));
        return fromFraction(t, OreFraction{std::move(one), SkewPoly::variable(t)});
    }
    return liftTo(t, generatorElem(t->below, i));
}

TowerElem TowerElem::fromFraction(const TowerPtr &t, OreFraction f)
{
    if (t->kind != Tower::Kind::OreLaurent)
        throw MismatchError("fractions only live in Ore-Laurent layers");
    TowerElem e;
    e.ring_ = t;
    e.data_ = std::make_shared<const OreFraction>(std::move(f));
    return e;
}

TowerElem TowerElem::fromCoords(const TowerPtr &t, std::vector<TowerElem> coords)
{
    if (t->kind != Tower::Kind::Crossed)
        throw MismatchError("coordinate vectors only live in crossed layers");
    if (static_cast<int>(coords.size()) != t->qSize())
        throw MismatchError("coordinate vector has wrong length");
    TowerElem e;
    e.ring_ = t;
    e.data_ = std::make_shared<const std::vector<TowerElem>>(std::move(coords));
    return e;
}

TowerElem TowerElem::crossedUnit(const TowerPtr &t, int q)
{
    if (t->kind != Tower::Kind::Crossed || q < 0 || q >= t->qSize())
        throw InputError("bad crossed unit index");
    std::vector<TowerElem> coords(t->qSize(), TowerElem::zero(t->below));
    coords[q] = TowerElem::one(t->below);
    return fromCoords(t, std::move(coords));
}

bool TowerElem::isZero() const
{
    if (std::holds_alternative<Scalar>(data_))
        return std::get<Scalar>(data_).isZero();
    if (std::holds_alternative<std::shared_ptr<const OreFraction>>(data_))
        return std::get<std::shared_ptr<const OreFraction>>(data_)->isZero();
    if (std::holds_alternative<std::shared_ptr<const std::vector<TowerElem>>>(data_)) {
        for (auto &c : *std::get<std::shared_ptr<const std::vector<TowerElem>>>(data_))
            if (!c.isZero())
                return false;
        return true;
    }
    throw Error("uninitialized tower element");
}

bool TowerElem::isOne() const
{
    if (std::holds_alternative<Scalar>(data_))
        return std::get<Scalar>(data_).isOne();
    if (std::holds_alternative<std::shared_ptr<const OreFraction>>(data_)) {
        const OreFraction &f = *std::get<std::shared_ptr<const OreFraction>>(data_);
        return polyIsOne(f.den) && polyIsOne(f.num);
    }
    if (std::holds_alternative<std::shared_ptr<const std::vector<TowerElem>>>(data_)) {
        const auto &cs = *std::get<std::shared_ptr<const std::vector<TowerElem>>>(data_);
        for (size_t q = 1; q < cs.size(); ++q)
            if (!cs[q].isZero())
                return false;
        return cs[0].isOne();
    }
    throw Error("uninitialized tower element");
}

const Scalar &TowerElem::scalar() const
{
    if (!std::holds_alternative<Scalar>(data_))
        throw MismatchError("not a base-field element");
    return std::get<Scalar>(data_);
}

const OreFraction &TowerElem::fraction() const
{
    if (!std::holds_alternative<std::shared_ptr<const OreFraction>>(data_))
        throw MismatchError("not an Ore-Laurent element");
    return *std::get<std::shared_ptr<const OreFraction>>(data_);
}

const std::vector<TowerElem> &TowerElem::coords() const
{
    if (!std::holds_alternative<std::shared_ptr<const std::vector<TowerElem>>>(data_))
        throw MismatchError("not a crossed-layer element");
    return *std::get<std::shared_ptr<const std::vector<TowerElem>>>(data_);
}

void TowerElem::checkRing(const TowerElem &o) const
{
    if (!ring_ || !o.ring_)
        throw Error("uninitialized tower element");
    checkSameRing(ring_, o.ring_);
}

TowerElem TowerElem::operator+(const TowerElem &o) const
{
    checkRing(o);
    switch (ring_->kind) {
    case Tower::Kind::Base:
        return fromScalar(ring_, scalar() + o.scalar());
    case Tower::Kind::OreLaurent: {
        const OreFraction &f = fraction(), &g = o.fraction();
        if (f.isZero())
            return o;
        if (g.isZero())
            return *this;
        auto cd = oreCommonDenominator(f, g);
        return fromFraction(ring_, OreFraction::make(cd.d, cd.nf + cd.ng));
    }
    case Tower::Kind::Crossed: {
        std::vector<TowerElem> out = coords();
        const auto &oc = o.coords();
        for (size_t q = 0; q < out.size(); ++q)
            out[q] = out[q] + oc[q];
        return fromCoords(ring_, std::move(out));
    }
    }
    throw Error("unreachable");
}

TowerElem TowerElem::operator-() const
{
    switch (ring_->kind) {
    case Tower::Kind::Base:
        return fromScalar(ring_, -scalar());
    case Tower::Kind::OreLaurent: {
        const OreFraction &f = fraction();
        return fromFraction(ring_, OreFraction{f.den, -f.num});
    }
    case Tower::Kind::Crossed: {
        std::vector<TowerElem> out = coords();
        for (auto &c : out)
            c = -c;
        return fromCoords(ring_, std::move(out));
    }
    }
    throw Error("unreachable");
}

TowerElem TowerElem::operator-(const TowerElem &o) const { return *this + (-o); }

TowerElem TowerElem::operator*(const TowerElem &o) const
{
    checkRing(o);
    switch (ring_->kind) {
    case Tower::Kind::Base:
        return fromScalar(ring_, scalar() * o.scalar());
    case Tower::Kind::OreLaurent: {
        const OreFraction &f = fraction(), &g = o.fraction();
        if (f.isZero() || g.isZero())
            return zero(ring_);
        // d1^-1 n1 d2^-1 n2 with n1 = t^c n1':  find u n1' = v d2, then
        // n1' d2^-1 = u^-1 v and t^c u^-1 = (t^c u t^-c)^-1 t^c.
        int c = 0;
        SkewPoly n1p = f.num.shiftToPolynomial(c);
        auto [u, v] = lclmCofactors(n1p, g.den);
        // t^c u^-1 = uConj^-1 t^c with uConj = t^c u t^-c
        SkewPoly uConj = SkewPoly::zero(ring_);
        for (auto &[d, x] : u.coeffs) {
            TowerElem s = applySigmaPow(ring_, x, c);
            if (!s.isZero())
                uConj.coeffs[d] = s;
        }
        SkewPoly den = uConj * f.den;
        SkewPoly num = (v * g.num).shiftedBy(c);
        return fromFraction(ring_, OreFraction::make(std::move(den), std::move(num)));
    }
    case Tower::Kind::Crossed: {
        const auto &xc = coords();
        const auto &yc = o.coords();
        int m = ring_->qSize();
        std::vector<TowerElem> out(m, TowerElem::zero(ring_->below));
        for (int q = 0; q < m; ++q) {
            if (xc[q].isZero())
                continue;
            for (int r = 0; r < m; ++r) {
                if (yc[r].isZero())
                    continue;
                int k = ring_->qMult[q][r];
                TowerElem term = xc[q] * evalHom(ring_->below, ring_->actionImages[q], yc[r]) *
                                 ring_->factorSet[q][r];
                out[k] = out[k] + term;
            }
        }
        return fromCoords(ring_, std::move(out));
    }
    }
    throw Error("unreachable");
}

TowerElem TowerElem::inverse() const
{
    if (isZero())
        throw DivisionByZeroError();
    switch (ring_->kind) {
    case Tower::Kind::Base:
        return fromScalar(ring_, scalar().inverse());
    case Tower::Kind::OreLaurent: {
        const OreFraction &f = fraction();
        return fromFraction(ring_, OreFraction::make(f.num, f.den));
    }
    case Tower::Kind::Crossed: {
        TowerElem out;
        ZeroDivisorWitness w = crossedInverseOrWitness(*this, out);
        if (w.found)
            throw ZeroDivisorError("crossed layer element is a zero divisor", w.left);
        return out;
    }
    }
    throw Error("unreachable");
}

TowerElem TowerElem::pow(long n) const
{
    if (n < 0)
        return inverse().pow(-n);
    TowerElem out = one(ring_);
    TowerElem b = *this;
    while (n > 0) {
        if (n & 1)
            out = out * b;
        b = (n >>= 1) ? b * b : b;
    }
    return out;
}

bool TowerElem::operator==(const TowerElem &o) const
{
    checkRing(o);
    switch (ring_->kind) {
    case Tower::Kind::Base:
        return scalar() == o.scalar();
    case Tower::Kind::OreLaurent:
        return fraction() == o.fraction();
    case Tower::Kind::Crossed: {
        const auto &a = coords(), &b = o.coords();
        for (size_t q = 0; q < a.size(); ++q)
            if (a[q] != b[q])
                return false;
        return true;
    }
    }
    throw Error("unreachable");
}

std::string TowerElem::str() const
{
    switch (ring_->kind) {
    case Tower::Kind::Base:
        return scalar().str();
    case Tower::Kind::OreLaurent:
        return fraction().str();
    case Tower::Kind::Crossed: {
        const auto &cs = coords();
        std::ostringstream out;
        bool first = true;
        for (size_t q = 0; q < cs.size(); ++q) {
            if (cs[q].isZero())
                continue;
            if (!first)
                out << " + ";
            first = false;
            out << "(" << cs[q].str() << ")u" << q;
        }
        return first ? "0" : out.str();
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Homomorphisms

TowerElem evalHom(const TowerPtr &target, const std::vector<TowerElem> &images,
                  const TowerElem &x)
{
    const TowerPtr &src = x.ring();
    if (static_cast<int>(images.size()) != src->numLaurentGens())
        throw MismatchError("wrong number of generator images");
    switch (src->kind) {
    case Tower::Kind::Base:
        return TowerElem::fromScalar(target, x.scalar());
    case Tower::Kind::OreLaurent: {
        int k = src->numLaurentGens() - 1;
        std::vector<TowerElem> lower(images.begin(), images.begin() + k);
        const TowerElem &tImg = images[k];
        auto evalPoly = [&](const SkewPoly &p) {
            TowerElem out = TowerElem::zero(target);
            for (auto &[d, c] : p.coeffs)
                out = out + evalHom(target, lower, c) * tImg.pow(d);
            return out;
        };
        const OreFraction &f = x.fraction();
        if (f.isZero())
            return TowerElem::zero(target);
        return evalPoly(f.den).inverse() * evalPoly(f.num);
    }
    case Tower::Kind::Crossed:
        throw UnsupportedError("homomorphisms out of crossed layers are not supported");
    }
    throw Error("unreachable");
}

TowerElem applySigmaPow(const TowerPtr &laurent, const TowerElem &x, long n)
{
    if (laurent->kind != Tower::Kind::OreLaurent)
        throw MismatchError("sigma only defined on Ore-Laurent layers");
    if (n == 0)
        return x;
    const auto &images = n > 0 ? laurent->sigmaImages : laurent->sigmaInvImages;
    TowerElem out = x;
    for (long i = 0; i < (n > 0 ? n : -n); ++i)
        out = evalHom(laurent->below, images, out);
    return out;
}

TowerElem liftTo(const TowerPtr &target, const TowerElem &x)
{
    if (x.ring().get() == target.get())
        return x;
    if (!target->below)
        throw MismatchError("element does not live below the target tower");
    TowerElem y = liftTo(target->below, x);
    switch (target->kind) {
    case Tower::Kind::OreLaurent: {
        SkewPoly one = SkewPoly::constant(target, TowerElem::one(target->below));
        return TowerElem::fromFraction(target,
                                       OreFraction{std::move(one), SkewPoly::constant(target, y)});
    }
    case Tower::Kind::Crossed: {
        std::vector<TowerElem> coords(target->qSize(), TowerElem::zero(target->below));
        coords[0] = y;
        return TowerElem::fromCoords(target, std::move(coords));
    }
    default:
        throw MismatchError("cannot lift into a base field");
    }
}

// ---------------------------------------------------------------------------
// Crossed inversion via the regular representation

ZeroDivisorWitness crossedInverseOrWitness(const TowerElem &x, TowerElem &out)
{
    const TowerPtr &ring = x.ring();
    if (ring->kind != Tower::Kind::Crossed)
        throw MismatchError("not a crossed-layer element");
    if (x.isZero())
        throw DivisionByZeroError();
    int m = ring->qSize();
    const TowerPtr &below = ring->below;
    const auto &xc = x.coords();

    // Solve z * x = 1 coordinatewise: sum_r z_r M[r][k] = delta_{k0} with
    // M[r][k] = alpha_r(x_{r^-1 k}) f(r, r^-1 k); left-linear in z.
    std::vector<std::vector<TowerElem>> M(m);
    for (int r = 0; r < m; ++r) {
        M[r].assign(2 * m, TowerElem::zero(below));
        for (int k = 0; k < m; ++k) {
            int s = ring->qMult[ring->qInv[r]][k];
            M[r][k] = evalHom(below, ring->actionImages[r], xc[s]) * ring->factorSet[r][s];
        }
        M[r][m + r] = TowerElem::one(below); // augmented identity block
    }

    // reduced row echelon form with left row operations
    int row = 0;
    std::vector<int> pivotCol(m, -1);
    for (int col = 0; col < m && row < m; ++col) {
        int p = -1;
        for (int r = row; r < m; ++r)
            if (!M[r][col].isZero()) {
                p = r;
                break;
            }
        if (p < 0)
            continue;
        std::swap(M[p], M[row]);
        TowerElem inv = M[row][col].inverse();
        for (int k = 0; k < 2 * m; ++k)
            M[row][k] = inv * M[row][k];
        for (int r = 0; r < m; ++r) {
            if (r == row || M[r][col].isZero())
                continue;
            TowerElem c = M[r][col];
            for (int k = 0; k < 2 * m; ++k)
                M[r][k] = M[r][k] - c * M[row][k];
        }
        pivotCol[row] = col;
        ++row;
    }

    if (row < m) {
        // a zero row in the left block: its right block is a kernel vector
        std::vector<TowerElem> w(M[row].begin() + m, M[row].end());
        ZeroDivisorWitness zd;
        zd.found = true;
        zd.left = TowerElem::fromCoords(ring, std::move(w));
        return zd;
    }
    // full rank: left block is the identity, right block is M^-1; row 0 of
    // it solves z M = e_0
    std::vector<TowerElem> z(M[0].begin() + m, M[0].end());
    out = TowerElem::fromCoords(ring, std::move(z));
    return {};
}

// ---------------------------------------------------------------------------
// Rank over a tower

namespace {

long costOf(const TowerElem &x)
{
    if (x.ring()->kind == Tower::Kind::Base)
        return 1;
    if (x.ring()->kind == Tower::Kind::OreLaurent) {
        const OreFraction &f = x.fraction();
        long c = 0;
        for (auto &[d, e] : f.den.coeffs)
            c += 1 + costOf(e);
        for (auto &[d, e] : f.num.coeffs)
            c += 1 + costOf(e);
        return c;
    }
    long c = 0;
    for (auto &e : x.coords())
        c += costOf(e);
    return c;
}

} // namespace

int towerMatrixRank(std::vector<std::vector<TowerElem>> M)
{
    if (M.empty() || M[0].empty())
        return 0;
    int rows = static_cast<int>(M.size());
    int cols = static_cast<int>(M[0].size());
    int rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        // pivot on the cheapest invertible entry in this column
        int p = -1;
        long best = 0;
        for (int r = row; r < rows; ++r) {
            if (M[r][col].isZero())
                continue;
            long c = costOf(M[r][col]);
            if (p < 0 || c < best) {
                p = r;
                best = c;
            }
        }
        if (p < 0)
            continue;
        std::swap(M[p], M[row]);
        TowerElem inv = M[row][col].inverse();
        for (int k = col; k < cols; ++k)
            M[row][k] = inv * M[row][k];
        for (int r = row + 1; r < rows; ++r) {
            if (M[r][col].isZero())
                continue;
            TowerElem c = M[r][col];
            for (int k = col; k < cols; ++k)
                M[r][k] = M[r][k] - c * M[row][k];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Poly-Z towers

namespace {

TowerElem evalWordInTower(const TowerPtr &t, const Word &w)
{
    TowerElem out = TowerElem::one(t);
    for (int letter : w) {
        int i = std::abs(letter) - 1;
        TowerElem g = TowerElem::generatorElem(t, i);
        out = out * (letter > 0 ? g : g.inverse());
    }
    return out;
}

} // namespace

PolyZTower buildPolyZTower(const GroupSpecPtr &spec, FieldKind field)
{
    bool trivialFree = spec->kind == GroupKind::Free && spec->rank() == 0;
    if (spec->kind != GroupKind::FreeAbelian && spec->kind != GroupKind::PolyZ && !trivialFree)
        throw UnsupportedError("Ore-Laurent towers require a free-abelian or poly-Z group");
    TowerPtr t = Tower::base(field);
    for (int i = 0; i < spec->rank(); ++i) {
        std::vector<TowerElem> sigma, sigmaInv;
        for (int j = 0; j < i; ++j) {
            if (spec->kind == GroupKind::FreeAbelian) {
                sigma.push_back(TowerElem::generatorElem(t, j));
                sigmaInv.push_back(TowerElem::generatorElem(t, j));
            } else {
                sigma.push_back(evalWordInTower(t, spec->layers[i].action[j]));
                sigmaInv.push_back(evalWordInTower(t, spec->layers[i].actionInv[j]));
            }
        }
        t = Tower::oreLaurent(t, spec->generatorNames[i], std::move(sigma), std::move(sigmaInv));
    }
    return PolyZTower{spec, t};
}

TowerElem PolyZTower::embedElement(const GroupElement &g) const
{
    if (g.spec().get() != group.get())
        throw MismatchError("element does not belong to the tower's group");
    if (group->rank() == 0)
        return TowerElem::one(tower);
    const auto &e = g.exponents();
    TowerElem out = TowerElem::one(tower);
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0)
            out = out * TowerElem::generatorElem(tower, static_cast<int>(i)).pow(e[i]);
    return out;
}

TowerElem PolyZTower::embedAlgebra(const GroupAlgebraElement &a) const
{
    if (a.field() != tower->field)
        throw MismatchError("base-field mismatch between algebra and tower");
    TowerElem out = TowerElem::zero(tower);
    for (auto &[g, c] : a.terms())
        out = out + TowerElem::fromScalar(tower, c) * embedElement(g);
    return out;
}

// ---------------------------------------------------------------------------
// Independence witnesses

WitnessReport hfWitnessCheck(const PolyZTower &pt, const std::vector<GroupElement> &subgroupGens,
                             const GroupElement &t, int range)
{
    if (range < 1)
        throw InputError("witness range must be at least 1");
    int n = pt.group->rank();
    if (n < 1 || pt.tower->kind != Tower::Kind::OreLaurent)
        throw UnsupportedError("unsupported witness configuration");
    for (const auto &h : subgroupGens)
        if (h.exponents().at(n - 1) != 0)
            return {false, false,
                    "unsupported witness configuration: subgroup generators must avoid the top "
                    "layer"};

    // the elements t^i, |i| <= range, as fractions over the layer below
    std::vector<TowerElem> vs;
    TowerElem tImg = pt.embedElement(t);
    for (int i = -range; i <= range; ++i)
        vs.push_back(tImg.pow(i));

    // common right denominator:  v_i = W_i D^-1
    TowerPtr top = pt.tower;
    SkewPoly D = SkewPoly::constant(top, TowerElem::one(top->below));
    std::vector<SkewPoly> W;
    for (auto &v : vs) {
        RightFraction rf = toRightFraction(v.fraction()); // rf.den is polynomial
        auto [x, y] = crmCofactors(D, rf.den);
        // D x = rf.den y = new common denominator; v = rf.num y D_new^-1
        for (auto &w : W)
            w = w * x;
        W.push_back(rf.num * y);
        D = D * x;
    }

    // left-linear independence of W_i over the layer below: coefficients
    int lo = 0, hi = 0;
    bool any = false;
    for (auto &w : W)
        if (!w.isZero()) {
            lo = any ? std::min(lo, w.degMin()) : w.degMin();
            hi = any ? std::max(hi, w.degMax()) : w.degMax();
            any = true;
        }
    int width = any ? hi - lo + 1 : 1;
    std::vector<std::vector<TowerElem>> A(W.size(),
                                          std::vector<TowerElem>(width, TowerElem::zero(top->below)));
    for (size_t i = 0; i < W.size(); ++i)
        for (auto &[d, c] : W[i].coeffs)
            A[i][d - lo] = c;
    int rank = towerMatrixRank(A);
    WitnessReport rep;
    rep.supported = true;
    rep.independent = rank == static_cast<int>(W.size());
    rep.detail = "rank " + std::to_string(rank) + " of " + std::to_string(W.size()) +
                 " powers over " + top->below->describe();
    return rep;
}

WitnessReport lWitnessCheck(const PolyZTower &pt, const std::vector<GroupElement> &subgroupGens,
                            const std::vector<GroupElement> &transversal)
{
    int n = pt.group->rank();
    if (n < 1 || pt.tower->kind != Tower::Kind::OreLaurent)
        throw UnsupportedError("unsupported witness configuration");
    // Supported pattern: the subgroup is generated by every generator below
    // the top layer together with a power of the top generator.
    std::vector<bool> lower(n - 1, false);
    long m = 0;
    for (const auto &h : subgroupGens) {
        const auto &e = h.exponents();
        long topExp = e[n - 1];
        bool pureLower = topExp == 0;
        if (pureLower) {
            int hits = 0, which = -1;
            for (int i = 0; i < n - 1; ++i)
                if (e[i] != 0) {
                    ++hits;
                    which = i;
                }
            if (hits != 1 || std::abs(e[which]) != 1)
                return {false, false, "unsupported witness configuration"};
            lower[which] = true;
        } else {
            for (int i = 0; i < n - 1; ++i)
                if (e[i] != 0)
                    return {false, false, "unsupported witness configuration"};
            long p = std::abs(topExp);
            if (m != 0 && m != p)
                return {false, false, "unsupported witness configuration"};
            m = p;
        }
    }
    if (m == 0 || !std::all_of(lower.begin(), lower.end(), [](bool b) { return b; }))
        return {false, false, "unsupported witness configuration"};

    // D is a free left module over D_H = Frac(below[t^{±m}; sigma^m]) with
    // basis 1, t, ..., t^{m-1}; decompose each transversal element and test
    // the coordinate matrix over D_H.
    const TowerPtr &top = pt.tower;
    const TowerPtr &below = top->below;
    std::vector<TowerElem> sig, sigInv;
    for (int j = 0; j < below->numLaurentGens(); ++j) {
        sig.push_back(applySigmaPow(top, TowerElem::generatorElem(below, j), m));
        sigInv.push_back(applySigmaPow(top, TowerElem::generatorElem(below, j), -m));
    }
    TowerPtr dh = Tower::oreLaurent(below, top->varName + "^" + std::to_string(m),
                                    std::move(sig), std::move(sigInv));

    std::vector<std::vector<TowerElem>> rows;
    for (const auto &g : transversal) {
        const auto &e = g.exponents();
        long topExp = e[n - 1];
        long r = ((topExp % m) + m) % m;
        long q = (topExp - r) / m;
        // lower monomial as an element of `below`
        TowerElem mu = TowerElem::one(below);
        for (int i = 0; i < n - 1; ++i)
            if (e[i] != 0)
                mu = mu * TowerElem::generatorElem(below, i).pow(e[i]);
        std::vector<TowerElem> row(m, TowerElem::zero(dh));
        // g = mu (t^m)^q t^r, so the D_H-coordinate at basis t^r is mu s^q
        row[r] = liftTo(dh, mu) * TowerElem::generatorElem(dh, dh->numLaurentGens() - 1).pow(q);
        rows.push_back(std::move(row));
    }
    int rank = towerMatrixRank(rows);
    WitnessReport rep;
    rep.supported = true;
    rep.independent = rank == static_cast<int>(transversal.size());
    rep.detail = "rank " + std::to_string(rank) + " of " + std::to_string(transversal.size()) +
                 " transversal elements over " + dh->describe();
    return rep;
}

} // namespace skewlab
