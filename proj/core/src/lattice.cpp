#include "blowup/lattice.hpp"

#include <algorithm>
#include <functional>

namespace blowup {

namespace {

void check_dim(const DivisorClass& a, const LatticeContext& ctx, const char* what) {
    if (a.r() != ctx.r)
        throw InputError("dimension_mismatch", std::string(what) + " has " + std::to_string(a.r()) +
                                                   " exceptional coordinates, expected " + std::to_string(ctx.r));
}

void require_integral(const DivisorClass& a, const char* op) {
    if (!a.integral()) throw InputError("non_integral", std::string(op) + " needs an integral class, got " + a.pretty());
}

}  // namespace

DivisorClass::DivisorClass(std::vector<Rational> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw InputError("empty_class", "a divisor class needs at least the degree coordinate");
}

DivisorClass::DivisorClass(std::initializer_list<long> coords) {
    for (long v : coords) c_.emplace_back(v);
    if (c_.empty()) c_.emplace_back(0);
}

DivisorClass DivisorClass::from_ints(const std::vector<long>& coords) {
    std::vector<Rational> v;
    v.reserve(coords.size());
    for (long x : coords) v.emplace_back(x);
    return DivisorClass(std::move(v));
}

DivisorClass DivisorClass::zero(int r) { return DivisorClass(std::vector<Rational>(static_cast<size_t>(r) + 1)); }

DivisorClass DivisorClass::line(int r) {
    auto z = zero(r);
    z.c_[0] = 1;
    return z;
}

DivisorClass DivisorClass::exceptional(int r, int i) {
    if (i < 1 || i > r) throw InputError("bad_index", "E_" + std::to_string(i) + " out of range");
    auto z = zero(r);
    z.c_[static_cast<size_t>(i)] = -1;
    return z;
}

DivisorClass DivisorClass::uniform(int r, const Rational& d, const Rational& m) {
    std::vector<Rational> v(static_cast<size_t>(r) + 1, m);
    v[0] = d;
    return DivisorClass(std::move(v));
}

DivisorClass DivisorClass::almost_uniform(int r, long d, long m, long k, int j) {
    auto c = uniform(r, d, m);
    if (r >= 1) c.c_.at(static_cast<size_t>(j)) += k;
    return c;
}

bool DivisorClass::integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return is_integer(q); });
}

std::vector<long> DivisorClass::ints() const {
    std::vector<long> v;
    v.reserve(c_.size());
    for (const auto& q : c_) v.push_back(to_long(q));
    return v;
}

Rational DivisorClass::msum() const {
    Rational s = 0;
    for (size_t i = 1; i < c_.size(); ++i) s += c_[i];
    return s;
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    DivisorClass t = *this;
    return t += o;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
    DivisorClass t = *this;
    return t -= o;
}

DivisorClass DivisorClass::operator-() const {
    DivisorClass t = *this;
    for (auto& q : t.c_) q = -q;
    return t;
}

DivisorClass DivisorClass::operator*(const Rational& s) const {
    DivisorClass t = *this;
    for (auto& q : t.c_) q *= s;
    return t;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
    if (o.size() != size()) throw InputError("dimension_mismatch", "adding classes of different rank");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
    if (o.size() != size()) throw InputError("dimension_mismatch", "subtracting classes of different rank");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

bool DivisorClass::operator<(const DivisorClass& o) const {
    if (size() != o.size()) return size() < o.size();
    for (size_t i = 0; i < c_.size(); ++i) {
        int s = cmp(c_[i], o.c_[i]);
        if (s != 0) return s < 0;
    }
    return false;
}

std::string DivisorClass::pretty() const {
    std::string out;
    auto term = [&out](const Rational& coef, const std::string& sym, bool negate) {
        Rational c = negate ? Rational(-coef) : coef;
        if (c == 0) return;
        if (c < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        Rational a = abs(c);
        if (a != 1) {
            std::string s = to_string(a);
            out += a.get_den() == 1 ? s : "(" + s + ")";
        }
        out += sym;
    };
    term(c_[0], "L", false);
    for (size_t i = 1; i < c_.size(); ++i) term(c_[i], "E" + std::to_string(i), true);
    return out.empty() ? "0" : out;
}

std::vector<std::string> DivisorClass::to_strings() const {
    std::vector<std::string> v;
    for (const auto& q : c_) v.push_back(to_string(q));
    return v;
}

DivisorClass DivisorClass::from_strings(const std::vector<std::string>& v) {
    std::vector<Rational> c;
    for (const auto& s : v) c.push_back(parse_rational(s));
    return DivisorClass(std::move(c));
}

Rational intersect(const DivisorClass& a, const DivisorClass& b, const LatticeContext& ctx) {
    check_dim(a, ctx, "first class");
    check_dim(b, ctx, "second class");
    return intersect(a, b);
}

Rational intersect(const DivisorClass& a, const DivisorClass& b) {
    if (a.size() != b.size()) throw InputError("dimension_mismatch", "intersecting classes of different rank");
    Rational s = a[0] * b[0];
    for (size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
    return s;
}

DivisorClass canonical_class(const LatticeContext& ctx) { return DivisorClass::uniform(ctx.r, -3, -1); }

Rational adjunction_genus(const DivisorClass& C, const LatticeContext& ctx) {
    check_dim(C, ctx, "class");
    require_integral(C, "adjunction_genus");
    auto K = canonical_class(ctx);
    return (intersect(C, C) + intersect(C, K)) / 2 + 1;
}

Rational riemann_roch_chi(const DivisorClass& D, const LatticeContext& ctx) {
    check_dim(D, ctx, "class");
    require_integral(D, "riemann_roch_chi");
    auto K = canonical_class(ctx);
    return (intersect(D, D) - intersect(K, D)) / 2 + 1;
}

DivisorClass average_class(const DivisorClass& C, const LatticeContext& ctx) {
    check_dim(C, ctx, "class");
    if (ctx.r == 0) throw InputError("no_points", "averaging needs at least one point");
    return DivisorClass::uniform(ctx.r, C.d(), C.msum() / ctx.r);
}

bool is_abnormal(const DivisorClass& C, const LatticeContext& ctx) {
    check_dim(C, ctx, "class");
    require_integral(C, "is_abnormal");
    for (int i = 1; i <= ctx.r; ++i)
        if (C.m(i) < 0) throw InputError("negative_multiplicity", "abnormality needs m_i >= 0: " + C.pretty());
    Rational s = C.msum();
    if (s <= 0) throw InputError("zero_multiplicity", "abnormality needs sum m_i > 0");
    if (C.d() <= 0) throw InputError("nonpositive_degree", "abnormality needs d > 0");
    return C.d() * C.d() * ctx.r < s * s;
}

DivisorClass sorted_class(const DivisorClass& C) {
    std::vector<Rational> v = C.coords();
    std::sort(v.begin() + 1, v.end(), std::greater<Rational>());
    return DivisorClass(std::move(v));
}

}  // namespace blowup
