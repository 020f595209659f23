#include "doctest.h"

#include "blowup/seshadri.hpp"
#include "oracles.hpp"

using namespace blowup;

namespace {
Rational q(long a, long b = 1) { return frac(a, b); }
}  // namespace

TEST_CASE("exact epsilon with orthogonal pair certificates") {
    auto check_cert = [](const SeshadriResult& s) {
        REQUIRE(s.F);
        REQUIRE(s.C);
        CHECK(intersect(*s.F, *s.C) == 0);
        for (int i = 2; i <= s.F->r(); ++i) CHECK(s.F->m(i) == s.F->m(1));
        CHECK(Surd(s.F->m(1) / s.F->d()) == s.value);
    };
    for (int r = 2; r <= 10; ++r) {
        auto s = epsilon_exact(ConfigurationTag::parse("collinear", r));
        CHECK(s.value == Surd(q(1, r)));
        check_cert(s);
    }
    auto c10 = epsilon_exact(ConfigurationTag::parse("conic", 10));
    CHECK(c10.value == Surd(q(1, 5)));
    check_cert(c10);
    auto g8 = epsilon_exact(ConfigurationTag::parse("generic", 8));
    CHECK(g8.value == Surd(q(6, 17)));
    CHECK(sorted_class(*g8.C) == DivisorClass{6, 3, 2, 2, 2, 2, 2, 2, 2});
    check_cert(g8);
    CHECK(epsilon_exact(ConfigurationTag::parse("generic", 5)).value == Surd(q(2, 5)));
    // every finitely generated tag: eps >= 1/r and eps^2 <= 1/r
    for (const auto& tag : oracle::finite_tags()) {
        auto s = epsilon_exact(tag);
        CHECK(s.value >= Surd(q(1, tag.r)));
        CHECK(s.value.square() * tag.r <= 1);
    }
}

TEST_CASE("epsilon for generic r >= 9") {
    auto g9 = epsilon_exact(ConfigurationTag::parse("generic", 9));
    CHECK(g9.exact);
    CHECK(g9.value == Surd(q(1, 3)));
    auto g16 = epsilon_exact(ConfigurationTag::parse("generic", 16));
    CHECK(g16.certificate == CertificateKind::theorem);
    CHECK(g16.value == Surd(q(1, 4)));
    auto g10 = epsilon_exact(ConfigurationTag::parse("generic", 10));
    CHECK_FALSE(g10.exact);
    CHECK(g10.upper == Surd::inv_sqrt(10));
    CHECK(g10.lower < g10.upper);
    CHECK(g10.lower.square() * 10 <= 1);
}

TEST_CASE("lambda and its inequality") {
    for (int r = 2; r <= 10; ++r) {
        auto lam = lambda_L(ConfigurationTag::parse("collinear", r));
        CHECK(lam == 1 - r);
        CHECK(check_lambda_epsilon_inequality(lam, q(1, r)));
        CHECK(lam == 1 - 1 / q(1, r));
    }
    CHECK(lambda_L(ConfigurationTag::parse("conic", 10)) == q(-6, 4));
    CHECK(check_lambda_epsilon_inequality(q(-6, 4), q(1, 5)));
    CHECK(lambda_L(ConfigurationTag::parse("collinear_triple", 4)) == -2);
    CHECK(check_lambda_epsilon_inequality(-2, q(1, 3)));
    CHECK_FALSE(check_lambda_epsilon_inequality(-5, q(1, 3)));
    CHECK_THROWS_AS(check_lambda_epsilon_inequality(-1, 0), InputError);
}

TEST_CASE("unloading") {
    auto u6 = epsilon_lower_unloading(6, 60);
    CHECK(u6.lower == Surd(q(2, 5)));
    CHECK(u6.unloading->hypothesis == "r>d*sqrt(n)");
    auto u21 = epsilon_lower_unloading(21, 60);
    CHECK(u21.lower >= Surd(q(9, 42)));
    CHECK(u21.unloading->d == 2);
    CHECK(u21.unloading->r == 9);
    auto u4 = epsilon_lower_unloading(4, 10);
    CHECK(u4.lower == Surd(q(3, 8)));
    CHECK(u4.lower < epsilon_exact(ConfigurationTag::parse("generic", 4)).value);
    for (long n = 1; n <= 40; ++n) CHECK(epsilon_lower_unloading(n, 30).lower.square() * n <= 1);
}

TEST_CASE("sandwich") {
    CHECK(gamma_epsilon_sandwich(4, Surd(q(1, 3)), Surd(q(5, 3))));
    CHECK(gamma_epsilon_sandwich(5, Surd(q(1, 5)), Surd(q(1))));
    CHECK(gamma_epsilon_sandwich(2, Surd(q(1, 2)), Surd(q(1))));
    CHECK_FALSE(gamma_epsilon_sandwich(4, Surd(q(1, 2)), Surd(q(3, 2))));
    CHECK_THROWS_AS(gamma_epsilon_sandwich(4, Surd(q(0)), Surd(q(1))), InputError);
}

TEST_CASE("candidate boxes") {
    auto empty = candidate_negative_classes(DivisorClass{1}, default_spanning_nef(0));
    CHECK(empty.candidates.empty());
    CHECK_THROWS_AS(candidate_negative_classes(DivisorClass{1, 1}, default_spanning_nef(1)), InputError);
    std::vector<DivisorClass> short_h{DivisorClass::line(2), DivisorClass{1, 1, 0}};
    CHECK_THROWS_AS(candidate_negative_classes(DivisorClass{3, 1, 1}, short_h), InputError);
    for (const auto& inst : oracle::toy_box_instances()) {
        auto box = candidate_negative_classes(inst.F, inst.H, inst.opt);
        CHECK(box.s_certified);
        CHECK(box.members == oracle::brute_force_box(inst.F, inst.H, box.s));
        for (const auto& c : box.candidates) CHECK(intersect(c, inst.F) < 0);
    }
}

TEST_CASE("almost-uniform filter") {
    auto kept = almost_uniform_filter({DivisorClass{7, 2, 2, 2}, DivisorClass{7, 3, 2, 2}, DivisorClass{7, 3, 2, 1},
                                       DivisorClass{7, 2, 3, 2}});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].m == 2);
    CHECK(kept[0].k == 0);
    CHECK(kept[1].m == 2);
    CHECK(kept[1].k == 1);
    CHECK(kept[1].cls == DivisorClass{7, 3, 2, 2});
}

TEST_CASE("effectivity reduction") {
    auto r = reduce_effectivity(DivisorClass::almost_uniform(6, 5, 3, -3), {DivisorClass{2, 0, 1, 1, 1, 1, 1}});
    CHECK(r.not_effective);
    CHECK(r.summary.rfind("C-3E = -L is not effective", 0) == 0);
    CHECK(reduce_effectivity(DivisorClass{2, 3, 0}).not_effective);
    CHECK_FALSE(reduce_effectivity(DivisorClass{3, 1, 1, 1}).not_effective);
}

TEST_CASE("interpolation rank test") {
    // 2L - E1..E5 is a conic through 5 points: effective
    auto conic = interpolation_rank_test(DivisorClass::uniform(5, 2, 1), 1, 3);
    CHECK_FALSE(conic.non_effective);
    CHECK(conic.trial_dims == std::vector<long>{1, 1, 1});
    // 2L - E1..E6: no conic through 6 general points
    auto six = interpolation_rank_test(DivisorClass::uniform(6, 2, 1), 1, 3);
    CHECK(six.non_effective);
    CHECK(six.expected_dim == 0);
}

TEST_CASE("prove_nef outcomes") {
    auto not_nef = prove_nef(DivisorClass::uniform(5, 2, 1), 5);
    CHECK(not_nef.status == NefStatus::not_nef);
    auto ample = prove_nef(DivisorClass::uniform(5, 5, 2), 5);
    CHECK(ample.status == NefStatus::proved);
    auto six = prove_nef(DivisorClass::uniform(6, 5, 2), 6);
    CHECK(six.status == NefStatus::proved);
    // 3L - 2E1 - E2 on two points: nef (pairs 0 with L - E1 - E2... plus positive square)
    auto nonuni = prove_nef(DivisorClass{3, 2, 1}, 2);
    CHECK(nonuni.status == NefStatus::proved);
    CHECK(nonuni.box.shape == BoxShape::any);
    // a class that really fails: 4L - 3E1 - 2E2 pairs -1 with L - E1 - E2
    auto bad = prove_nef(DivisorClass{4, 3, 2}, 2);
    CHECK(bad.status == NefStatus::unresolved);
    REQUIRE(bad.unresolved.size() == 1);
    CHECK(bad.unresolved[0] == DivisorClass{1, 1, 1});
}

TEST_CASE("deterministic logs") {
    auto a = prove_nef(DivisorClass::uniform(12, 7, 2), 12, {}, {});
    auto b = prove_nef(DivisorClass::uniform(12, 7, 2), 12, {}, {});
    REQUIRE(a.log.size() == b.log.size());
    for (size_t i = 0; i < a.log.size(); ++i) CHECK(a.log[i].detail == b.log[i].detail);
}

TEST_CASE("nagata search") {
    CHECK_THROWS_AS(nagata_search(9, 10), InputError);
    CHECK(nagata_search(16, 30).square_shortcut);
    auto rep = nagata_search(10, 20);
    CHECK(rep.survivors.empty());
    CHECK(rep.enumerated == rep.killed_adjunction + rep.killed_reduction + rep.killed_rank);
}

TEST_CASE("pairing evidence") {
    auto ev = pairing_evidence(DivisorClass::uniform(21, 5, 1), DivisorClass::uniform(21, 42, 9), 20);
    CHECK(ev.all_positive);
    auto bad = pairing_evidence(DivisorClass::uniform(10, 3, 1), DivisorClass::uniform(10, 10, 3), 10);
    CHECK_FALSE(bad.all_positive);
}
