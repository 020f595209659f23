#include "blowup/exact.hpp"

#include <climits>

namespace blowup {

Rational frac(long num, long den) {
    if (den == 0) throw InputError("division_by_zero", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw InputError("bad_rational", "empty rational literal");
    if (t[0] == '+') t.erase(0, 1);
    auto slash = t.find('/');
    auto digits_ok = [](const std::string& u) {
        size_t i = (!u.empty() && u[0] == '-') ? 1 : 0;
        if (i >= u.size()) return false;
        for (; i < u.size(); ++i)
            if (u[i] < '0' || u[i] > '9') return false;
        return true;
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-')
        throw InputError("bad_rational", "not an exact rational: '" + s + "'");
    Integer n(num), dd(den);
    if (dd == 0) throw InputError("bad_rational", "zero denominator in '" + s + "'");
    Rational q(n, dd);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_q(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

long to_long(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p())
        throw InputError("not_integral", "expected a machine integer, got " + to_string(q));
    return q.get_num().get_si();
}

Surd::Surd(const Rational& coeff, const Integer& radicand) : coeff_(coeff), radicand_(radicand) {
    if (radicand_ <= 0) throw InputError("bad_surd", "radicand must be positive");
    Integer rest = radicand_;
    Integer out = 1;
    for (Integer f = 2; f * f <= rest; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            out *= f;
        }
    }
    coeff_ *= Rational(out);
    radicand_ = rest;
    if (coeff_ == 0) radicand_ = 1;
}

Surd Surd::inv_sqrt(long r) {
    if (r <= 0) throw InputError("bad_surd", "1/sqrt(r) needs r > 0");
    return Surd(frac(1, r), Integer(r));
}

Surd Surd::sqrt(long r) {
    if (r < 0) throw InputError("bad_surd", "sqrt of a negative number");
    if (r == 0) return Surd();
    return Surd(Rational(1), Integer(r));
}

Rational Surd::rational() const {
    if (!is_rational()) throw InputError("irrational", str() + " is irrational");
    return coeff_;
}

std::string Surd::str() const {
    if (is_rational()) return to_string(coeff_);
    if (coeff_ == 1) return "sqrt(" + radicand_.get_str() + ")";
    return to_string(coeff_) + "*sqrt(" + radicand_.get_str() + ")";
}

int compare(const Surd& a, const Surd& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    int c = cmp(a.square(), b.square());
    c = c < 0 ? -1 : (c > 0 ? 1 : 0);
    return sa > 0 ? c : -c;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace blowup
