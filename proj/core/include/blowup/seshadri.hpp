#pragma once

#include "blowup/cones.hpp"
#include "blowup/fatpoints.hpp"
#include "blowup/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blowup {

enum class CertificateKind { abnormal_class, orthogonal_pair, generator_table, unloading, theorem, none };
std::string to_string(CertificateKind k);

struct UnloadingWitness {
    long d = 0, r = 0, n = 0;
    // "r<d*sqrt(n)": bound r/(n d), needs r <= n; "r>d*sqrt(n)": bound d/r, needs n >= r.
    std::string hypothesis;
};

struct SeshadriResult {
    bool exact = false;
    Surd value;         // when exact
    Surd lower, upper;  // always filled; equal to value when exact
    CertificateKind certificate = CertificateKind::none;
    std::optional<DivisorClass> F;  // nef class dL - m sum E_i with value m/d
    std::optional<DivisorClass> C;  // effective class with F.C = 0, or abnormal class
    std::optional<UnloadingWitness> unloading;
    std::string note;
};

// generic(r) is accepted for every r here; r >= 10 non-square yields an interval.
SeshadriResult epsilon_exact(const ConfigurationTag& tag);
Rational lambda_L(const ConfigurationTag& tag);
bool check_lambda_epsilon_inequality(const Rational& lambda, const Rational& epsilon);
SeshadriResult epsilon_lower_unloading(long n, long search_bound);
bool gamma_epsilon_sandwich(long r, const Surd& epsilon, const Surd& gamma);

enum class BoxMode {
    full,     // 0 <= C.H_i <= sF.H_i for every H_i
    relaxed,  // C.H_i >= 0 for all i, C.E_i >= 0, upper bound only from H_0
};
enum class BoxShape { any, almost_uniform };

struct BoxOptions {
    BoxMode mode = BoxMode::full;
    BoxShape shape = BoxShape::any;
    long s = 0;                   // 0: smallest s with sF certified effective by Riemann-Roch
    std::string s_certificate;    // caller's justification when supplying s
};

struct CandidateBox {
    DivisorClass F;
    std::vector<DivisorClass> spanning_nef;
    long s = 1;
    bool s_certified = false;
    std::string s_justification;
    BoxMode mode = BoxMode::full;
    BoxShape shape = BoxShape::any;
    std::vector<DivisorClass> members;     // every nonzero class in the box
    std::vector<DivisorClass> candidates;  // members with C.F < 0
};

std::vector<DivisorClass> default_spanning_nef(int r);              // L, L - E_i
std::vector<DivisorClass> anticanonical_spanning_nef(int r, long a);  // H_0 = aL - sum E, H_i = H_0 - E_i

CandidateBox candidate_negative_classes(const DivisorClass& F, const std::vector<DivisorClass>& spanning_nef,
                                        const BoxOptions& opt = {});

struct AlmostUniformClass {
    long d = 0, m = 0, k = 0;
    DivisorClass cls;  // dL - m sum E_i - k E_1
    bool operator==(const AlmostUniformClass& o) const { return d == o.d && m == o.m && k == o.k; }
};
std::vector<AlmostUniformClass> almost_uniform_filter(const std::vector<DivisorClass>& candidates);
std::optional<AlmostUniformClass> as_almost_uniform(const DivisorClass& C);

// Effectivity reduction for general points: subtract known primes E with
// E.C < 0 until the class is manifestly not effective.
struct ReductionResult {
    bool not_effective = false;
    DivisorClass final_class;
    std::vector<std::string> steps;
    std::string summary;
};
ReductionResult reduce_effectivity(const DivisorClass& C, const std::vector<DivisorClass>& hints = {});

// Randomized interpolation test over F_p: true when h^0 vanished in every trial.
struct RankTest {
    bool non_effective = false;
    long expected_dim = 0;
    std::vector<long> trial_dims;
};
RankTest interpolation_rank_test(const DivisorClass& C, std::uint64_t seed, int trials,
                                 std::uint64_t prime = kDefaultPrime);

struct ProveNefOptions {
    std::vector<DivisorClass> spanning_nef;  // empty: L, L - E_i
    BoxOptions box;
    std::uint64_t seed = 1;
    int trials = 3;
    std::uint64_t prime = kDefaultPrime;
};

struct ProofStep {
    DivisorClass candidate;
    std::optional<AlmostUniformClass> triple;
    std::string step;  // "i", "ii", "iii", "iv", "unresolved"
    std::string detail;
};

enum class NefStatus { proved, conditional, not_nef, unresolved };
std::string to_string(NefStatus s);

struct NefProof {
    NefStatus status = NefStatus::unresolved;
    CandidateBox box;
    std::vector<AlmostUniformClass> filtered;          // almost-uniform candidates with C.F < 0
    std::vector<AlmostUniformClass> after_adjunction;  // candidates that reached steps iii/iv
    std::vector<ProofStep> log;
    std::vector<DivisorClass> unresolved;
    std::string note;
};

NefProof prove_nef(const DivisorClass& F, int r, const std::vector<DivisorClass>& hints = {},
                   const ProveNefOptions& opt = {});

struct NagataReport {
    long r = 0, degree_bound = 0;
    bool square_shortcut = false;
    long enumerated = 0, killed_adjunction = 0, killed_reduction = 0, killed_rank = 0;
    std::vector<AlmostUniformClass> survivors;
};
NagataReport nagata_search(long r, long degree_bound, std::uint64_t seed = 1, int trials = 3,
                           std::uint64_t prime = kDefaultPrime);

// F.C over almost-uniform classes C (plus the E_i) of degree <= bound that
// could be prime: m_i in [0, d] and D.C >= 0 for the nef class D.
struct PairingEvidence {
    long checked = 0;
    bool all_positive = true;
    std::optional<DivisorClass> worst;
    Rational worst_pairing;
};
PairingEvidence pairing_evidence(const DivisorClass& F, const DivisorClass& nef_D, long degree_bound);

}  // namespace blowup
