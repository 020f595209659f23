#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

using Rational = mpq_class;
using Integer = mpz_class;

// Exit-code classes used by the command line front end.
struct InputError : std::runtime_error {
    std::string code;
    InputError(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

struct InconsistencyError : std::runtime_error {
    std::string code;
    InconsistencyError(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

// Canonical num/den; the two-argument mpq_class constructor does not canonicalize.
Rational frac(long num, long den);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integer(const Rational& q);
Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);
long to_long(const Rational& q);  // throws unless integral and in range

// coeff * sqrt(radicand), radicand square-free and positive.
class Surd {
public:
    Surd() : coeff_(0), radicand_(1) {}
    Surd(const Rational& q) : coeff_(q), radicand_(1) {}  // NOLINT
    Surd(const Rational& coeff, const Integer& radicand);

    static Surd inv_sqrt(long r);  // 1/sqrt(r)
    static Surd sqrt(long r);

    const Rational& coeff() const { return coeff_; }
    const Integer& radicand() const { return radicand_; }
    bool is_rational() const { return radicand_ == 1 || coeff_ == 0; }
    Rational rational() const;  // throws if irrational
    Rational square() const { return coeff_ * coeff_ * Rational(radicand_); }
    int sign() const { return sgn(coeff_); }
    std::string str() const;

    friend int compare(const Surd& a, const Surd& b);
    friend bool operator==(const Surd& a, const Surd& b) { return compare(a, b) == 0; }
    friend bool operator<(const Surd& a, const Surd& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Surd& a, const Surd& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Surd& a, const Surd& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Surd& a, const Surd& b) { return compare(a, b) >= 0; }

    Surd operator*(const Rational& q) const { return Surd(coeff_ * q, radicand_); }

private:
    Rational coeff_;
    Integer radicand_;
};

Integer binomial(long n, long k);

}  // namespace blowup
