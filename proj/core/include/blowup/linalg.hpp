#pragma once

#include "blowup/exact.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blowup {

struct RationalField {
    using Elem = Rational;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return 1 / a; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    Elem from_integer(const Integer& z) const { return Rational(z); }
    Elem from_rational(const Rational& q) const { return q; }
    std::string str(const Elem& a) const { return to_string(a); }
    std::uint64_t characteristic() const { return 0; }
};

struct PrimeField {
    using Elem = std::uint64_t;
    std::uint64_t p;
    explicit PrimeField(std::uint64_t prime);
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p ? s - p : s; }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem inv(Elem a) const;
    bool is_zero(Elem a) const { return a == 0; }
    Elem from_integer(const Integer& z) const;
    Elem from_rational(const Rational& q) const;
    std::string str(Elem a) const { return std::to_string(a); }
    std::uint64_t characteristic() const { return p; }
};

bool is_prime(std::uint64_t n);

template <class F>
using Rows = std::vector<std::vector<typename F::Elem>>;

// In-place reduced row echelon form; zero rows removed. Returns pivot columns.
template <class F>
std::vector<size_t> rref(const F& f, Rows<F>& a, size_t ncols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < a.size(); ++col) {
        size_t p = row;
        while (p < a.size() && f.is_zero(a[p][col])) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        auto inv = f.inv(a[row][col]);
        for (size_t j = col; j < ncols; ++j) a[row][j] = f.mul(a[row][j], inv);
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == row || f.is_zero(a[i][col])) continue;
            auto factor = a[i][col];
            for (size_t j = col; j < ncols; ++j)
                if (!f.is_zero(a[row][j])) a[i][j] = f.sub(a[i][j], f.mul(factor, a[row][j]));
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    return pivots;
}

template <class F>
size_t rank_of(const F& f, Rows<F> a, size_t ncols) {
    return rref(f, a, ncols).size();
}

// Basis of { x : A x = 0 }, returned in reduced row echelon form.
template <class F>
Rows<F> nullspace(const F& f, Rows<F> a, size_t ncols) {
    auto piv = rref(f, a, ncols);
    std::vector<char> is_piv(ncols, 0);
    for (size_t c : piv) is_piv[c] = 1;
    Rows<F> basis;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_piv[free]) continue;
        std::vector<typename F::Elem> v(ncols, f.zero());
        v[free] = f.one();
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(a[i][free]);
        basis.push_back(std::move(v));
    }
    rref(f, basis, ncols);
    return basis;
}

// Incremental echelon basis: insert vectors one at a time, reduce on the fly.
template <class F>
class EchelonBasis {
public:
    EchelonBasis(const F& f, size_t ncols) : f_(f), n_(ncols) {}
    // Returns true if v increased the rank.
    bool insert(std::vector<typename F::Elem> v) {
        reduce(v);
        size_t p = 0;
        while (p < n_ && f_.is_zero(v[p])) ++p;
        if (p == n_) return false;
        auto inv = f_.inv(v[p]);
        for (size_t j = p; j < n_; ++j) v[j] = f_.mul(v[j], inv);
        size_t pos = 0;
        while (pos < piv_.size() && piv_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
        piv_.insert(piv_.begin() + static_cast<long>(pos), p);
        return true;
    }
    bool contains(std::vector<typename F::Elem> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!f_.is_zero(x)) return false;
        return true;
    }
    size_t rank() const { return rows_.size(); }
    // Canonical reduced form.
    Rows<F> reduced() const {
        Rows<F> a = rows_;
        rref(f_, a, n_);
        return a;
    }

private:
    void reduce(std::vector<typename F::Elem>& v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            size_t p = piv_[i];
            if (f_.is_zero(v[p])) continue;
            auto factor = v[p];
            for (size_t j = p; j < n_; ++j)
                if (!f_.is_zero(rows_[i][j])) v[j] = f_.sub(v[j], f_.mul(factor, rows_[i][j]));
        }
    }
    F f_;
    size_t n_;
    Rows<F> rows_;
    std::vector<size_t> piv_;
};

// Fraction-free (Bareiss) rank of an integer matrix.
size_t bareiss_rank(std::vector<std::vector<Integer>> a);
// Rank of a rational matrix via Bareiss after clearing denominators row-wise.
size_t rational_rank_fraction_free(const std::vector<std::vector<Rational>>& a);

}  // namespace blowup
