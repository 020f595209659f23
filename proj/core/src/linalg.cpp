#include "blowup/linalg.hpp"

namespace blowup {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t prime) : p(prime) {
    if (prime >= (std::uint64_t{1} << 62) || !is_prime(prime))
        throw InputError("bad_prime", std::to_string(prime) + " is not a supported prime");
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw InconsistencyError("division_by_zero", "inverting zero in F_p");
    return pow(a, p - 2);
}

PrimeField::Elem PrimeField::from_integer(const Integer& z) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

PrimeField::Elem PrimeField::from_rational(const Rational& q) const {
    Elem den = from_integer(q.get_den());
    if (den == 0) throw InputError("bad_element", "denominator divisible by p in " + to_string(q));
    return mul(from_integer(q.get_num()), inv(den));
}

size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
    if (a.empty()) return 0;
    const size_t ncols = a[0].size();
    size_t row = 0;
    Integer prev = 1;
    for (size_t col = 0; col < ncols && row < a.size(); ++col) {
        size_t p = row;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        for (size_t i = row + 1; i < a.size(); ++i) {
            for (size_t j = col + 1; j < ncols; ++j) {
                a[i][j] = a[row][col] * a[i][j] - a[i][col] * a[row][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        ++row;
    }
    return row;
}

size_t rational_rank_fraction_free(const std::vector<std::vector<Rational>>& a) {
    std::vector<std::vector<Integer>> z;
    for (const auto& row : a) {
        Integer l = 1;
        for (const auto& q : row) l = lcm(l, q.get_den());
        std::vector<Integer> zr;
        for (const auto& q : row) zr.emplace_back(Integer(q * Rational(l)));
        z.push_back(std::move(zr));
    }
    return bareiss_rank(std::move(z));
}

}  // namespace blowup
