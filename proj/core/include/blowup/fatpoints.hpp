#pragma once

#include "blowup/exact.hpp"
#include "blowup/lattice.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace blowup {

// p == 0 means the rationals.
struct FieldSpec {
    std::uint64_t p = 0;
    bool is_rational() const { return p == 0; }
    std::string name() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }
};

constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

struct FatPointScheme {
    int n = 2;
    FieldSpec field;
    std::vector<std::vector<Rational>> points;  // projective coordinates, first nonzero entry 1
    std::vector<long> multiplicities;

    // Validates, reduces mod p, normalizes, checks distinctness.
    static FatPointScheme make(int n, FieldSpec field, std::vector<std::vector<Rational>> points,
                               std::vector<long> multiplicities);
    // Uniformly random distinct points over F_p.
    static FatPointScheme random(int n, std::uint64_t p, size_t count, std::vector<long> multiplicities,
                                 std::uint64_t seed);
    // Coordinate points (1:0:0), (0:1:0), (0:0:1) of P^2 over the given field.
    static FatPointScheme coordinate_triangle(FieldSpec field = {});

    size_t size() const { return points.size(); }
    long degree() const;  // length of the scheme: sum binom(m_i+n-1, n)
    bool reduced() const;
};

// Rows in reduced row echelon form over the monomials of degree t in
// graded reverse lexicographic order (x_0 > x_1 > ... > x_n).
struct ComponentBasis {
    int n = 2;
    long t = 0;
    FieldSpec field;
    std::vector<std::vector<Rational>> rows;
    size_t dim() const { return rows.size(); }
    size_t ncols() const;
    bool operator==(const ComponentBasis& o) const { return n == o.n && t == o.t && rows == o.rows; }
};

// Exponent vectors of degree t in the fixed order.
std::vector<std::vector<int>> monomials(int n, long t);

struct ContainmentResult {
    bool contained = false;
    std::string rule;  // "direct" or "lemma" (m < r)
    long checked_from = 0;
    long checked_to = -1;  // inclusive
    std::optional<long> failing_degree;
    std::vector<Rational> witness;  // symbolic row outside the power
};

enum class BHVerdict { fails_by_alpha, holds_by_reg, indeterminate };
std::string to_string(BHVerdict v);

struct BHResult {
    BHVerdict verdict = BHVerdict::indeterminate;
    long alpha_I = 0, reg_I = 0, alpha_sym = 0;
};

struct WaldschmidtEstimate {
    struct Entry {
        long m;
        long d_m;
        Rational ratio;
    };
    std::vector<Entry> entries;
    Rational upper;
    Rational lower;
    std::string lower_source;
    bool pinned() const { return lower == upper; }
};

struct ResurgenceBounds {
    Rational lower, upper;
    bool exact() const { return lower == upper; }
};

// Lower-bound certificates for gamma of a reduced planar scheme: a class
// H = h0 L - sum h_i E_i that the caller has certified nef gives gamma >= sum h_i / h0.
struct GammaCertificate {
    std::optional<DivisorClass> nef_class;
    std::optional<Rational> epsilon;  // gamma >= r * epsilon
};

// Caching evaluator for one scheme. Not safe for concurrent use; create one per thread.
class FatPointIdeal {
public:
    explicit FatPointIdeal(FatPointScheme z);
    ~FatPointIdeal();
    FatPointIdeal(FatPointIdeal&&) noexcept;
    FatPointIdeal& operator=(FatPointIdeal&&) noexcept;

    const FatPointScheme& scheme() const;
    ComponentBasis symbolic_component(long m, long t);
    size_t symbolic_dim(long m, long t);
    long alpha_symbolic(long m);
    long hilbert_function(long t);  // of R / I(Z)
    long regularity();
    ComponentBasis power_component(long r, long t);
    size_t power_dim(long r, long t);
    // Generators of I taken from degrees alpha..top (default reg+1).
    void set_generator_top(long top);
    long generator_top();
    ContainmentResult contains_symbolic_in_power(long m, long r);
    // Row-space check (I^r)_t within (I^(m))_t.
    bool power_in_symbolic(long r, long m, long t);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ComponentBasis symbolic_component(const FatPointScheme& z, long m, long t);
long alpha_symbolic(const FatPointScheme& z, long m);
long hilbert_function(const FatPointScheme& z, long t);
long regularity(const FatPointScheme& z);
ComponentBasis power_component(const FatPointScheme& z, long r, long t);
ContainmentResult contains_symbolic_in_power(const FatPointScheme& z, long m, long r);
BHResult bh_criteria(const FatPointScheme& z, long m, long r);
BHResult bh_criteria(FatPointIdeal& ideal, long m, long r);
WaldschmidtEstimate waldschmidt_estimate(const FatPointScheme& z, long m_max, const GammaCertificate& cert = {});
ResurgenceBounds resurgence_bounds(const FatPointScheme& z, const WaldschmidtEstimate& gamma);
ResurgenceBounds resurgence_bounds(long alpha, long reg, const Rational& gamma_lower, const Rational& gamma_upper);
bool frobenius_containment_check(const FatPointScheme& z, long q);

}  // namespace blowup
