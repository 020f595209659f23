#pragma once

#include "blowup/exact.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace blowup {

// Picard lattice of P^2 blown up at r points, basis L, E_1..E_r,
// Gram matrix diag(1, -1, ..., -1).
struct LatticeContext {
    int r = 0;
    LatticeContext() = default;
    explicit LatticeContext(int r_) : r(r_) {
        if (r_ < 0) throw InputError("bad_r", "number of points must be non-negative");
    }
    int rank() const { return r + 1; }
    int gram(int i, int j) const { return i != j ? 0 : (i == 0 ? 1 : -1); }
};

// D = d L - sum m_i E_i, stored as (d, m_1, ..., m_r).
class DivisorClass {
public:
    DivisorClass() : c_(1) {}
    explicit DivisorClass(std::vector<Rational> coords);
    DivisorClass(std::initializer_list<long> coords);
    static DivisorClass from_ints(const std::vector<long>& coords);
    static DivisorClass zero(int r);
    static DivisorClass line(int r);
    static DivisorClass exceptional(int r, int i);  // E_i, 1-based
    static DivisorClass uniform(int r, const Rational& d, const Rational& m);
    static DivisorClass almost_uniform(int r, long d, long m, long k, int j = 1);

    int r() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& d() const { return c_[0]; }
    const Rational& m(int i) const { return c_.at(static_cast<size_t>(i)); }  // 1-based
    const Rational& operator[](size_t i) const { return c_[i]; }
    Rational& operator[](size_t i) { return c_[i]; }
    const std::vector<Rational>& coords() const { return c_; }
    size_t size() const { return c_.size(); }

    bool integral() const;
    std::vector<long> ints() const;  // requires integral
    Rational msum() const;

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator-() const;
    DivisorClass operator*(const Rational& s) const;
    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    bool operator==(const DivisorClass& o) const { return c_ == o.c_; }
    bool operator!=(const DivisorClass& o) const { return !(c_ == o.c_); }
    bool operator<(const DivisorClass& o) const;  // lexicographic on coordinates

    // Human readable, e.g. "5L-3E2-3E3" or "-L".
    std::string pretty() const;
    // [d, m_1, ..., m_r] as exact strings.
    std::vector<std::string> to_strings() const;
    static DivisorClass from_strings(const std::vector<std::string>& v);

private:
    std::vector<Rational> c_;
};

Rational intersect(const DivisorClass& a, const DivisorClass& b, const LatticeContext& ctx);
Rational intersect(const DivisorClass& a, const DivisorClass& b);
DivisorClass canonical_class(const LatticeContext& ctx);
Rational adjunction_genus(const DivisorClass& C, const LatticeContext& ctx);
Rational riemann_roch_chi(const DivisorClass& D, const LatticeContext& ctx);
DivisorClass average_class(const DivisorClass& C, const LatticeContext& ctx);
bool is_abnormal(const DivisorClass& C, const LatticeContext& ctx);

// Multiplicities sorted in non-increasing order, degree first.
DivisorClass sorted_class(const DivisorClass& C);

}  // namespace blowup
