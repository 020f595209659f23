// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any fails.
#include "blowup/cones.hpp"
#include "blowup/fatpoints.hpp"
#include "blowup/lattice.hpp"
#include "blowup/seshadri.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <tuple>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace blowup;

namespace {

// Pinned tolerances. Everything is exact, so the only tolerances are wall-clock budgets.
constexpr double kBudgetSeshadriEach = 1.0;
constexpr double kBudgetProveNef = 10.0;
constexpr double kBudgetContainment = 30.0;
constexpr double kBudgetHochsterHuneke = 120.0;

int failures = 0;

struct Check {
    bool ok = true;
    std::ostringstream why;
    void expect(bool cond, const std::string& msg) {
        if (!cond) {
            if (ok) why << msg;
            ok = false;
        }
    }
};

double run(const char* id, const char* title, double budget, const std::function<void(Check&)>& body) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0 && secs > budget) c.expect(false, "over time budget");
    std::printf("%s %s: %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs, c.ok ? "" : " -- ",
                c.ok ? "" : c.why.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
    return secs;
}

Rational q(long a, long b = 1) { return frac(a, b); }

FatPointScheme triangle() { return FatPointScheme::coordinate_triangle(); }

FatPointScheme collinear_triple_points() {
    return FatPointScheme::make(2, {}, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}}, {1, 1, 1, 1});
}

}  // namespace

int main() {
    // 1. Seshadri oracle table
    run("ACC1", "Seshadri oracle table", 0, [](Check& c) {
        auto timed = [&](const ConfigurationTag& tag) {
            auto t0 = std::chrono::steady_clock::now();
            auto res = epsilon_exact(tag);
            double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            c.expect(s < kBudgetSeshadriEach, tag.name() + " over 1 s");
            c.expect(res.exact, tag.name() + " not exact");
            return res;
        };
        for (int r = 2; r <= 10; ++r) {
            auto tag = ConfigurationTag::parse("collinear", r);
            c.expect(timed(tag).value == Surd(q(1, r)), "collinear epsilon r=" + std::to_string(r));
            c.expect(lambda_L(tag) == q(1 - r), "collinear lambda r=" + std::to_string(r));
        }
        auto conic = ConfigurationTag::parse("conic", 10);
        c.expect(timed(conic).value == Surd(q(1, 5)), "conic(10) epsilon");
        c.expect(lambda_L(conic) == q(-3, 2), "conic(10) lambda");

        auto ct = ConfigurationTag::parse("collinear_triple", 4);
        c.expect(timed(ct).value == Surd(q(1, 3)), "collinear_triple epsilon");
        DivisorClass H{3, 1, 1, 1, 2};
        c.expect(is_nef(H, ct), "3L-E1-E2-E3-2E4 should be nef");
        GammaCertificate cert;
        cert.nef_class = H;
        auto w = waldschmidt_estimate(collinear_triple_points(), 3, cert);
        c.expect(w.pinned() && w.upper == q(5, 3), "collinear_triple gamma = 5/3");

        const std::pair<int, Rational> generic[] = {{2, q(1, 2)}, {3, q(1, 2)}, {5, q(2, 5)},
                                                    {6, q(2, 5)}, {7, q(3, 8)}, {8, q(6, 17)}};
        for (const auto& [r, v] : generic)
            c.expect(timed(ConfigurationTag::parse("generic", r)).value == Surd(v),
                     "generic epsilon r=" + std::to_string(r));
    });

    // 2. Nefness proofs
    run("ACC2", "prove_nef for 5L-2E(6) and 7L-2E(12)", kBudgetProveNef, [](Check& c) {
        ProveNefOptions opt;
        opt.spanning_nef = anticanonical_spanning_nef(6, 3);
        opt.box.mode = BoxMode::relaxed;
        opt.box.s = 1;
        auto F6 = DivisorClass::uniform(6, 5, 2);
        auto p6 = prove_nef(F6, 6, {}, opt);
        c.expect(p6.status == NefStatus::proved, "r=6 status " + to_string(p6.status));
        // k = 0: (3,1) and (5,2) fail F.C < 0; (7,3) dies by adjunction with C^2 + C.K = -8.
        // k > 0: (1,0,1), (2,0,3), (3,1,1) all fail F.C < 0.
        std::map<std::tuple<long, long, long>, std::string> steps;
        for (const auto& st : p6.log)
            if (st.triple) steps[{st.triple->d, st.triple->m, st.triple->k}] = st.step + " " + st.detail;
        auto step_of = [&](long d, long m, long k) {
            auto it = steps.find({d, m, k});
            return it == steps.end() ? std::string("missing") : it->second;
        };
        for (auto t : {std::tuple{3L, 1L, 0L}, {5L, 2L, 0L}, {1L, 0L, 1L}, {2L, 0L, 3L}, {3L, 1L, 1L}})
            c.expect(step_of(std::get<0>(t), std::get<1>(t), std::get<2>(t)).rfind("i ", 0) == 0, "r=6 step (i) member");
        auto s73 = step_of(7, 3, 0);
        c.expect(s73.rfind("ii ", 0) == 0 && s73.find("= -8 ") != std::string::npos, "(7,3): " + s73);
        auto red = reduce_effectivity(DivisorClass::almost_uniform(6, 5, 3, -3), {DivisorClass{2, 0, 1, 1, 1, 1, 1}});
        c.expect(red.not_effective && red.summary.rfind("C-3E = -L", 0) == 0, "(5,3,-3): " + red.summary);

        ProveNefOptions o12;
        o12.spanning_nef = anticanonical_spanning_nef(12, 4);
        o12.box.mode = BoxMode::relaxed;
        o12.box.s = 1;
        auto F12 = DivisorClass::uniform(12, 7, 2);
        auto p12 = prove_nef(F12, 12, {}, o12);
        std::set<std::tuple<long, long, long>> got;
        for (const auto& a : p12.after_adjunction) got.insert({a.d, a.m, a.k});
        c.expect(got == std::set<std::tuple<long, long, long>>{{7, 2, 1}, {10, 3, 0}, {3, 1, -1}},
                 "r=12 post-filter candidate list");
        for (const auto& st : p12.log) {
            if (!st.triple) continue;
            auto t = std::tuple{st.triple->d, st.triple->m, st.triple->k};
            if (t == std::tuple{3L, 1L, -1L}) c.expect(st.step == "iii", "(3,1,-1) must die in step iii");
            if (t == std::tuple{7L, 2L, 1L} || t == std::tuple{10L, 3L, 0L})
                c.expect(st.step == "iv", "(7,2,1)/(10,3,0) must die in step iv");
        }
        c.expect(p12.status == NefStatus::conditional, "r=12 with s=1 must be conditional");
        o12.box.s = 0;
        auto rig = prove_nef(F12, 12, {}, o12);
        c.expect(rig.status == NefStatus::proved, "r=12 with certified s: " + to_string(rig.status));
    });

    // 3. Unloading
    run("ACC3", "unloading bounds and ampleness evidence", 0, [](Check& c) {
        auto u6 = epsilon_lower_unloading(6, 60);
        c.expect(u6.lower == Surd(q(2, 5)), "n=6 bound " + u6.lower.str());
        c.expect(u6.unloading && u6.unloading->d == 2 && u6.unloading->r == 5, "n=6 witness");
        auto u21 = epsilon_lower_unloading(21, 60);
        c.expect(u21.lower >= Surd(q(9, 42)), "n=21 bound " + u21.lower.str());
        auto F = DivisorClass::uniform(21, 5, 1);
        auto D = DivisorClass::uniform(21, 42, 9);
        c.expect(q(9, 42) <= u21.lower.rational(), "nef certificate for 42L-9E needs eps >= 9/42");
        auto ev = pairing_evidence(F, D, 30);
        c.expect(ev.checked > 0 && ev.all_positive, "5L-E(21) pairing evidence");
    });

    // 4. Containment law
    run("ACC4", "containment law for three points", kBudgetContainment, [](Check& c) {
        FatPointIdeal I(triangle());
        for (long r = 1; r <= 5; ++r)
            for (long m = r; m <= 8; ++m) {
                auto res = I.contains_symbolic_in_power(m, r);
                bool law = 3 * m >= 4 * r - 1;
                c.expect(res.contained == law, "m=" + std::to_string(m) + " r=" + std::to_string(r));
                auto bh = bh_criteria(I, m, r);
                if (bh.verdict == BHVerdict::fails_by_alpha) c.expect(!res.contained, "BH (a) contradicts");
                if (bh.verdict == BHVerdict::holds_by_reg) c.expect(res.contained, "BH (b) contradicts");
            }
    });

    // 5. alpha formula
    run("ACC5", "alpha, regularity and resurgence for three points", 0, [](Check& c) {
        auto z = triangle();
        FatPointIdeal I(z);
        for (long m = 1; m <= 9; ++m)
            c.expect(I.alpha_symbolic(m) == 3 * (m / 2) + 2 * (m % 2), "alpha m=" + std::to_string(m));
        c.expect(I.regularity() == 2, "regularity");
        GammaCertificate cert;
        cert.nef_class = DivisorClass{2, 1, 1, 1};
        c.expect(is_nef(*cert.nef_class, ConfigurationTag::parse("generic", 3)), "2L-E1-E2-E3 nef");
        auto w = waldschmidt_estimate(z, 4, cert);
        auto rho = resurgence_bounds(z, w);
        c.expect(rho.exact() && rho.lower == q(4, 3), "resurgence 4/3");
    });

    // 6. Hochster-Huneke
    run("ACC6", "I^(2r) in I^r at random points; Frobenius in char 2", kBudgetHochsterHuneke, [](Check& c) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            size_t count = 3 + s % 3;
            auto z = FatPointScheme::random(2, kDefaultPrime, count, std::vector<long>(count, 1), 1000 + s);
            FatPointIdeal I(z);
            for (long r = 2; r <= 3; ++r)
                c.expect(I.contains_symbolic_in_power(2 * r, r).contained, "config " + std::to_string(s));
        }
        for (size_t count = 1; count <= 6; ++count) {
            auto z = FatPointScheme::random(2, 2, count, std::vector<long>(count, 1), 77 + count);
            c.expect(frobenius_containment_check(z, 2), "char 2, " + std::to_string(count) + " points");
        }
    });

    // 7. Property suites
    run("ACC7", "lattice and sandwich properties", 0, [](Check& c) {
        std::mt19937_64 rng(7);
        auto rnd = [&](int r) {
            std::vector<long> v(static_cast<size_t>(r) + 1);
            for (auto& x : v) x = static_cast<long>(rng() % 21) - 10;
            return DivisorClass::from_ints(v);
        };
        for (int it = 0; it < 1000; ++it) {
            int r = 1 + static_cast<int>(rng() % 10);
            LatticeContext ctx(r);
            auto a = rnd(r), b = rnd(r), e = rnd(r);
            c.expect(intersect(a + b, e) == intersect(a, e) + intersect(b, e), "bilinearity");
            c.expect(intersect(a, b) == intersect(b, a), "symmetry");
            c.expect(oracle::signature_ok(a, b), "signature");
            Rational two_p = intersect(a, a) + intersect(a, canonical_class(ctx));
            c.expect(is_integer(two_p / 2), "adjunction parity");
            c.expect(intersect(a, a) <= intersect(average_class(a, ctx), average_class(a, ctx)), "averaging");
            auto pa = sorted_class(oracle::abs_mults(a)), pb = sorted_class(oracle::abs_mults(b));
            c.expect(intersect(pa, pb) <= intersect(average_class(pa, ctx), average_class(pb, ctx)), "sorted pairing");
        }
        for (const auto& tag : oracle::finite_tags()) {
            auto e = epsilon_exact(tag);
            try {
                auto lam = lambda_L(tag);
                c.expect(check_lambda_epsilon_inequality(lam, e.value.rational()), "lambda " + tag.name());
            } catch (const InputError&) {
            }
        }
        // r eps <= gamma <= sqrt(r) with gamma bounded above by d_m/m at random points
        for (int r = 3; r <= 6; ++r) {
            auto e = epsilon_exact(ConfigurationTag::parse("generic", r));
            auto z = FatPointScheme::random(2, kDefaultPrime, static_cast<size_t>(r), std::vector<long>(static_cast<size_t>(r), 1), 5 + r);
            auto w = waldschmidt_estimate(z, 5, {});
            c.expect(gamma_epsilon_sandwich(r, e.value, Surd(w.upper)), "sandwich generic " + std::to_string(r));
        }
        auto z = triangle();
        auto w = waldschmidt_estimate(z, 6, {});
        for (const auto& en : w.entries) c.expect(en.ratio >= q(3, 2), "d_m/m >= gamma");
        for (long a = 1; a <= 3; ++a)
            for (long b = 1; b <= 3; ++b)
                c.expect(w.entries[static_cast<size_t>(a * b - 1)].d_m <= a * w.entries[static_cast<size_t>(b - 1)].d_m ||
                             a * b > 6,
                         "sub-multiplicativity");
        auto ct = collinear_triple_points();
        auto wc = waldschmidt_estimate(ct, 3, {});
        c.expect(gamma_epsilon_sandwich(4, Surd(q(1, 3)), Surd(wc.upper)), "collinear_triple sandwich");
    });

    // 8. Oracle equivalences
    run("ACC8", "(-1)-class and candidate-box oracles", 0, [](Check& c) {
        auto e6 = enumerate_neg_one_classes(6);
        c.expect(e6.size() == 27, "27 classes, got " + std::to_string(e6.size()));
        LatticeContext ctx(6);
        for (const auto& e : e6) c.expect(adjunction_genus(e, ctx) == 0, "genus 0");
        auto orbit = oracle::weyl_orbit_neg_one(6);
        c.expect(std::set<DivisorClass>(e6.begin(), e6.end()) == orbit, "Cremona orbit agrees");
        for (const auto& inst : oracle::toy_box_instances()) {
            auto box = candidate_negative_classes(inst.F, inst.H, inst.opt);
            c.expect(box.members == oracle::brute_force_box(inst.F, inst.H, box.s), "box brute force " + inst.F.pretty());
        }
    });

    run("NAGATA10", "no abnormal survivors for r = 10 up to degree 20", 0, [](Check& c) {
        auto rep = nagata_search(10, 20, 1, 3);
        c.expect(rep.enumerated > 0, "nothing enumerated");
        c.expect(rep.survivors.empty(), "survivors found");
    });

    return failures == 0 ? 0 : 1;
}
