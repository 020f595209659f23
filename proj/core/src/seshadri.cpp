#include "blowup/seshadri.hpp"

#include "blowup/linalg.hpp"
#include "blowup/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace blowup {

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::abnormal_class: return "abnormal_class";
        case CertificateKind::orthogonal_pair: return "orthogonal_pair";
        case CertificateKind::generator_table: return "generator_table";
        case CertificateKind::unloading: return "unloading";
        case CertificateKind::theorem: return "theorem";
        case CertificateKind::none: return "none";
    }
    return "?";
}

std::string to_string(NefStatus s) {
    switch (s) {
        case NefStatus::proved: return "proved";
        case NefStatus::conditional: return "conditional";
        case NefStatus::not_nef: return "not_nef";
        case NefStatus::unresolved: return "unresolved";
    }
    return "?";
}

namespace {

long isqrt(long n) {
    long s = 0;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

bool is_square(long n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

long lv(const Rational& q) { return to_long(q); }

std::uint64_t mix(std::uint64_t seed, const DivisorClass& c, int trial) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    auto feed = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
        h ^= 0xff;
        h *= 1099511628211ULL;
    };
    for (const auto& s : c.to_strings()) feed(s);
    feed(std::to_string(trial));
    return h;
}

bool is_uniform(const DivisorClass& F) {
    for (int i = 2; i <= F.r(); ++i)
        if (F.m(i) != F.m(1)) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact values

SeshadriResult epsilon_lower_unloading(long n, long search_bound) {
    if (n < 1) throw InputError("bad_n", "unloading needs n >= 1");
    if (search_bound < 1) throw InputError("bad_bound", "search bound must be >= 1");
    std::optional<UnloadingWitness> best_w;
    Rational best = 0;
    auto consider = [&](const Rational& v, long d, long r, const char* hyp) {
        if (!best_w || v > best) {
            best = v;
            best_w = UnloadingWitness{d, r, n, hyp};
        }
    };
    // Ties keep the first witness: hypothesis r < d sqrt(n) first, then smaller d, then smaller r.
    for (long d = 1; d <= search_bound; ++d)
        for (long r = 1; r <= std::min(n, search_bound); ++r)
            if (r * r < d * d * n) consider(frac(r, n * d), d, r, "r<d*sqrt(n)");
    for (long d = 1; d <= search_bound; ++d)
        for (long r = 1; r <= std::min(n, search_bound); ++r)
            if (r * r > d * d * n) consider(frac(d, r), d, r, "r>d*sqrt(n)");
    SeshadriResult res;
    res.upper = Surd::inv_sqrt(n);
    if (!best_w) {
        res.lower = frac(1, n);
        res.note = "no admissible (d, r) in the search box; fell back to 1/n";
        return res;
    }
    if (best * best * n > 1) throw InconsistencyError("unloading_exceeds", "unloading bound exceeds 1/sqrt(n)");
    res.lower = best;
    res.certificate = CertificateKind::unloading;
    res.unloading = best_w;
    res.exact = res.lower == res.upper;
    if (res.exact) res.value = res.lower;
    return res;
}

SeshadriResult epsilon_exact(const ConfigurationTag& tag) {
    const int r = tag.r;
    SeshadriResult res;
    if (tag.kind == ConfigKind::generic && r >= 9) {
        if (r == 9) {
            auto mK = -canonical_class(LatticeContext(9));
            res.exact = true;
            res.value = res.lower = res.upper = frac(1, 3);
            res.certificate = CertificateKind::orthogonal_pair;
            res.F = mK;
            res.C = mK;
            res.note = "-K is the class of the irreducible cubic through 9 general points; (-K)^2 = 0 makes it nef";
            return res;
        }
        if (is_square(r)) {
            res.exact = true;
            res.value = res.lower = res.upper = Surd::inv_sqrt(r);
            res.certificate = CertificateKind::theorem;
            res.note = "r is a perfect square: no abnormal curves (Nagata), so epsilon = 1/sqrt(r)";
            return res;
        }
        res = epsilon_lower_unloading(r, 60);
        res.note = "generic non-square r > 9: only bounds are available";
        return res;
    }
    tag.validate();
    std::optional<DivisorClass> best;
    Rational best_v;
    for (const auto& g : eff_generators(tag)) {
        Rational s = g.msum();
        if (s <= 0) continue;
        Rational v = g.d() / s;
        if (!best || v < best_v) {
            best = g;
            best_v = v;
        }
    }
    if (!best) throw InputError("no_points", "epsilon needs at least one blown-up point");
    Integer num = best->msum().get_num(), den = best->d().get_num();
    Integer g = gcd(num, den);
    DivisorClass F = DivisorClass::uniform(r, Rational(num / g), Rational(den / g));
    if (!is_nef(F, tag)) throw InconsistencyError("certificate_not_nef", F.pretty() + " should be nef");
    if (intersect(F, *best) != 0) throw InconsistencyError("certificate_not_orthogonal", "F.C != 0");
    res.exact = true;
    res.value = res.lower = res.upper = best_v;
    res.certificate = CertificateKind::orthogonal_pair;
    res.F = F;
    res.C = *best;
    if (best_v < frac(1, r)) throw InconsistencyError("epsilon_below_1_over_r", "epsilon < 1/r is impossible");
    return res;
}

Rational lambda_L(const ConfigurationTag& tag) {
    tag.validate();
    std::optional<Rational> best;
    for (const auto& g : eff_generators(tag)) {
        Rational sq = intersect(g, g);
        Rational dl = g.d();
        if (sq >= 0 || dl <= 0) continue;
        Rational v = sq / (dl * dl);
        if (!best || v < *best) best = v;
    }
    if (!best)
        throw InputError("unsupported_tag", "no negative prime class of positive degree; lambda_L is not determined by the finite list");
    return *best;
}

bool check_lambda_epsilon_inequality(const Rational& lambda, const Rational& epsilon) {
    if (epsilon <= 0) throw InputError("bad_epsilon", "epsilon must be positive");
    return lambda >= 1 - 1 / epsilon;
}

bool gamma_epsilon_sandwich(long r, const Surd& epsilon, const Surd& gamma) {
    if (r < 1 || epsilon.sign() <= 0 || gamma.sign() <= 0) throw InputError("bad_input", "sandwich needs positive inputs");
    return epsilon * Rational(r) <= gamma && gamma.square() <= r;
}

// ---------------------------------------------------------------------------
// Candidate boxes

std::vector<DivisorClass> default_spanning_nef(int r) {
    std::vector<DivisorClass> h{DivisorClass::line(r)};
    for (int i = 1; i <= r; ++i) h.push_back(DivisorClass::line(r) - DivisorClass::exceptional(r, i));
    return h;
}

std::vector<DivisorClass> anticanonical_spanning_nef(int r, long a) {
    std::vector<DivisorClass> h{DivisorClass::uniform(r, a, 1)};
    for (int i = 1; i <= r; ++i) h.push_back(h[0] - DivisorClass::exceptional(r, i));
    return h;
}

CandidateBox candidate_negative_classes(const DivisorClass& F, const std::vector<DivisorClass>& H,
                                        const BoxOptions& opt) {
    const int r = F.r();
    const LatticeContext ctx(r);
    if (!F.integral()) throw InputError("non_integral", "F must be integral");
    if (intersect(F, F) <= 0) throw InputError("nonpositive_square", "candidate boxes need F^2 > 0");
    if (F.d() <= 0) throw InputError("nonpositive_degree", "candidate boxes need F.L > 0");
    if (H.empty()) throw InputError("no_spanning_set", "spanning nef set is empty");
    {
        std::vector<std::vector<Rational>> rows;
        for (const auto& h : H) {
            if (h.r() != r) throw InputError("dimension_mismatch", "spanning class of the wrong rank");
            rows.push_back(h.coords());
        }
        if (rational_rank_fraction_free(rows) != static_cast<size_t>(r) + 1)
            throw InputError("not_spanning", "spanning nef classes do not span the lattice");
    }
    CandidateBox box;
    box.F = F;
    box.spanning_nef = H;
    box.mode = opt.mode;
    box.shape = opt.shape;
    auto certified = [&](long s) {
        DivisorClass sF = F * Rational(s);
        Rational chi = riemann_roch_chi(sF, ctx);
        // h^2(sF) = h^0(K - sF) = 0 because (K - sF).L < 0.
        return std::make_pair(chi >= 1 && intersect(canonical_class(ctx) - sF, DivisorClass::line(r)) < 0, chi);
    };
    if (opt.s <= 0) {
        for (long s = 1; s <= 1000; ++s) {
            auto [ok, chi] = certified(s);
            if (ok) {
                box.s = s;
                box.s_certified = true;
                box.s_justification = "chi(" + std::to_string(s) + "F) = " + to_string(chi) + " >= 1 and h^2 = 0";
                break;
            }
        }
        if (!box.s_certified) throw InputError("no_effective_multiple", "no multiple sF with chi >= 1 found up to s = 1000");
    } else {
        box.s = opt.s;
        auto [ok, chi] = certified(opt.s);
        if (ok) {
            box.s_certified = true;
            box.s_justification = "chi(" + std::to_string(opt.s) + "F) = " + to_string(chi) + " >= 1 and h^2 = 0";
        } else if (!opt.s_certificate.empty()) {
            box.s_certified = true;
            box.s_justification = opt.s_certificate;
        } else {
            box.s_certified = false;
            box.s_justification = "chi(" + std::to_string(opt.s) + "F) = " + to_string(chi) +
                                  "; effectivity of sF not certified";
        }
    }
    const DivisorClass sF = F * Rational(box.s);
    std::vector<Rational> upper;
    for (const auto& h : H) upper.push_back(intersect(sF, h));

    std::vector<DivisorClass> members;
    auto keep = [&](const DivisorClass& c) {
        bool zero = true;
        for (const auto& x : c.coords())
            if (x != 0) zero = false;
        if (!zero) members.push_back(c);
    };

    if (opt.shape == BoxShape::any) {
        IntegerPolytope poly(static_cast<size_t>(r) + 1);
        for (size_t i = 0; i < H.size(); ++i) {
            std::vector<Rational> a(static_cast<size_t>(r) + 1);
            a[0] = H[i].d();
            for (int j = 1; j <= r; ++j) a[static_cast<size_t>(j)] = -H[i].m(j);
            poly.add_ge(a, 0);
            if (opt.mode == BoxMode::full || i == 0) poly.add_le(a, upper[i]);
        }
        if (opt.mode == BoxMode::relaxed)
            for (int j = 1; j <= r; ++j) {
                std::vector<Rational> a(static_cast<size_t>(r) + 1);
                a[static_cast<size_t>(j)] = 1;
                poly.add_ge(a, 0);
            }
        poly.enumerate([&](const std::vector<long>& x) {
            keep(DivisorClass::from_ints(x));
            return true;
        });
    } else {
        const int jmax = std::max(1, r);
        for (int j = 1; j <= jmax; ++j) {
            // variables (d, m, k): C = dL - m sum E_i - k E_j
            const size_t nv = r == 0 ? 1 : 3;
            IntegerPolytope poly(nv);
            for (size_t i = 0; i < H.size(); ++i) {
                std::vector<Rational> a(nv);
                a[0] = H[i].d();
                if (r > 0) {
                    a[1] = -H[i].msum();
                    a[2] = -H[i].m(j);
                }
                poly.add_ge(a, 0);
                if (opt.mode == BoxMode::full || i == 0) poly.add_le(a, upper[i]);
            }
            if (r > 0) {
                if (opt.mode == BoxMode::relaxed) {
                    poly.add_ge({0, 1, 0}, 0);
                    poly.add_ge({0, 1, 1}, 0);
                }
                if (r == 1) poly.add_le({0, 0, 1}, 0), poly.add_ge({0, 0, 1}, 0);  // k is redundant
            }
            poly.enumerate([&](const std::vector<long>& x) {
                if (r == 0)
                    keep(DivisorClass::from_ints({x[0]}));
                else
                    keep(DivisorClass::almost_uniform(r, x[0], x[1], x[2], j));
                return true;
            });
        }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    box.members = members;
    for (const auto& c : members)
        if (intersect(c, F) < 0) box.candidates.push_back(c);
    return box;
}

std::optional<AlmostUniformClass> as_almost_uniform(const DivisorClass& C) {
    if (!C.integral()) return std::nullopt;
    const int r = C.r();
    AlmostUniformClass a;
    a.d = lv(C.d());
    if (r == 0) {
        a.cls = C;
        return a;
    }
    std::vector<long> m;
    for (int i = 1; i <= r; ++i) m.push_back(lv(C.m(i)));
    if (r == 1) {
        a.m = m[0];
    } else if (r == 2) {
        a.m = std::min(m[0], m[1]);
        a.k = std::max(m[0], m[1]) - a.m;
    } else {
        std::map<long, int> freq;
        for (long v : m) ++freq[v];
        if (freq.size() > 2) return std::nullopt;
        if (freq.size() == 1) {
            a.m = m[0];
        } else {
            auto it = freq.begin();
            auto it2 = std::next(it);
            long common, odd;
            if (it->second == r - 1) {
                common = it->first;
                odd = it2->first;
            } else if (it2->second == r - 1) {
                common = it2->first;
                odd = it->first;
            } else {
                return std::nullopt;
            }
            a.m = common;
            a.k = odd - common;
        }
    }
    a.cls = DivisorClass::almost_uniform(r, a.d, a.m, a.k, 1);
    return a;
}

std::vector<AlmostUniformClass> almost_uniform_filter(const std::vector<DivisorClass>& candidates) {
    std::vector<AlmostUniformClass> out;
    for (const auto& c : candidates) {
        auto a = as_almost_uniform(c);
        if (!a) continue;
        if (std::find(out.begin(), out.end(), *a) == out.end()) out.push_back(*a);
    }
    std::sort(out.begin(), out.end(), [](const AlmostUniformClass& x, const AlmostUniformClass& y) {
        if (x.d != y.d) return x.d < y.d;
        if (x.m != y.m) return x.m < y.m;
        return x.k < y.k;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Elimination steps

namespace {

struct Pattern {
    long d;
    std::vector<long> m;  // non-increasing, positive
};

// Sorted (-1)-curve patterns on up to min(r, 8) general points.
const std::vector<Pattern>& prime_patterns(int r) {
    static std::mutex mu;
    static std::map<int, std::vector<Pattern>> cache;
    std::lock_guard<std::mutex> lock(mu);
    int k = std::min(r, 8);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<Pattern> pats;
    for (const auto& e : enumerate_neg_one_classes(k)) {
        if (e.d() <= 0) continue;
        Pattern p{lv(e.d()), {}};
        for (int i = 1; i <= k; ++i)
            if (e.m(i) > 0) p.m.push_back(lv(e.m(i)));
        std::sort(p.m.rbegin(), p.m.rend());
        bool dup = false;
        for (const auto& q : pats)
            if (q.d == p.d && q.m == p.m) dup = true;
        if (!dup) pats.push_back(p);
    }
    std::sort(pats.begin(), pats.end(), [](const Pattern& a, const Pattern& b) {
        return a.d != b.d ? a.d < b.d : a.m > b.m;
    });
    return cache.emplace(k, pats).first->second;
}

// Place the pattern on the largest multiplicities of C.
DivisorClass place(const Pattern& p, const DivisorClass& C) {
    const int r = C.r();
    std::vector<int> idx(static_cast<size_t>(r));
    std::iota(idx.begin(), idx.end(), 1);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return C.m(a) > C.m(b); });
    auto P = DivisorClass::zero(r);
    P[0] = p.d;
    for (size_t t = 0; t < p.m.size(); ++t) P[static_cast<size_t>(idx[t])] = p.m[t];
    return P;
}

std::string letter(size_t i) {
    if (i == 0) return "E";
    return "P" + std::to_string(i);
}

}  // namespace

ReductionResult reduce_effectivity(const DivisorClass& C0, const std::vector<DivisorClass>& hints) {
    const int r = C0.r();
    if (!C0.integral()) throw InputError("non_integral", "reduction needs an integral class");
    std::vector<Pattern> pats = prime_patterns(r);
    std::vector<DivisorClass> literal;
    for (const auto& h : hints) {
        if (h.r() != r) throw InputError("dimension_mismatch", "hint of the wrong rank");
        bool nonneg = h.d() > 0;
        for (int i = 1; i <= r; ++i)
            if (h.m(i) < 0) nonneg = false;
        if (!nonneg) {
            literal.push_back(h);
            continue;
        }
        Pattern p{lv(h.d()), {}};
        for (int i = 1; i <= r; ++i)
            if (h.m(i) > 0) p.m.push_back(lv(h.m(i)));
        std::sort(p.m.rbegin(), p.m.rend());
        pats.insert(pats.begin(), p);
    }
    ReductionResult res;
    DivisorClass C = C0;
    std::vector<std::pair<DivisorClass, long>> runs;
    for (int iter = 0; iter < 100000; ++iter) {
        // E_i with C.E_i < 0 is a fixed component; removing it keeps effectivity.
        for (int i = 1; i <= r; ++i) {
            if (C.m(i) < 0) {
                res.steps.push_back("E" + std::to_string(i) + " is a fixed component " + std::to_string(-lv(C.m(i))) +
                                    " times; drop it");
                C[static_cast<size_t>(i)] = 0;
            }
        }
        if (C.d() < 0) {
            res.not_effective = true;
            res.summary = "negative degree";
            break;
        }
        std::optional<DivisorClass> best;
        Rational best_v = 0;
        for (const auto& p : pats) {
            if (static_cast<int>(p.m.size()) > r) continue;
            auto P = place(p, C);
            Rational v = intersect(P, C);
            if (v < best_v) {
                best_v = v;
                best = P;
            }
        }
        for (const auto& P : literal) {
            Rational v = intersect(P, C);
            if (v < best_v) {
                best_v = v;
                best = P;
            }
        }
        if (!best) {
            for (int i = 1; i <= r; ++i) {
                if (C.m(i) > C.d()) {
                    res.not_effective = true;
                    res.summary = "multiplicity " + to_string(C.m(i)) + " at p" + std::to_string(i) + " exceeds the degree";
                    break;
                }
            }
            if (res.not_effective) break;
            bool simple = true;
            long ones = 0;
            for (int i = 1; i <= r; ++i) {
                if (C.m(i) > 1) simple = false;
                if (C.m(i) == 1) ++ones;
            }
            long d = lv(C.d());
            long space = binomial(d + 2, 2).get_si();
            if (simple && ones >= space) {
                res.not_effective = true;
                res.summary = std::to_string(ones) + " general simple points impose independent conditions on the " +
                              std::to_string(space) + "-dimensional space of forms of degree " + std::to_string(d);
            }
            break;
        }
        res.steps.push_back(best->pretty() + " meets the class in " + to_string(best_v) + " < 0; subtract it");
        if (!runs.empty() && runs.back().first == *best)
            ++runs.back().second;
        else
            runs.emplace_back(*best, 1);
        C -= *best;
    }
    res.final_class = C;
    std::ostringstream head;
    head << "C";
    std::vector<DivisorClass> distinct;
    for (const auto& [P, n] : runs) {
        auto it = std::find(distinct.begin(), distinct.end(), P);
        size_t id = static_cast<size_t>(it - distinct.begin());
        if (it == distinct.end()) distinct.push_back(P);
        head << "-" << (n > 1 ? std::to_string(n) : "") << letter(id);
    }
    std::ostringstream where;
    for (size_t i = 0; i < distinct.size(); ++i)
        where << (i ? ", " : " with ") << letter(i) << " = " << distinct[i].pretty();
    std::string expr = runs.empty() ? C.pretty() : head.str() + " = " + C.pretty();
    if (res.not_effective)
        res.summary = expr + " is not effective (" + res.summary + ")" + where.str();
    else
        res.summary = expr + " could not be shown non-effective" + where.str();
    return res;
}

RankTest interpolation_rank_test(const DivisorClass& C, std::uint64_t seed, int trials, std::uint64_t prime) {
    if (trials < 1) throw InputError("bad_trials", "need at least one trial");
    const int r = C.r();
    RankTest rt;
    long d = lv(C.d());
    std::vector<long> mult;
    long conditions = 0;
    for (int i = 1; i <= r; ++i) {
        long m = std::max(0L, lv(C.m(i)));
        mult.push_back(m);
        conditions += binomial(m + 1, 2).get_si();
    }
    if (d < 0) {
        rt.non_effective = true;
        return rt;
    }
    rt.expected_dim = std::max(0L, binomial(d + 2, 2).get_si() - conditions);
    rt.non_effective = true;
    for (int t = 0; t < trials; ++t) {
        auto z = FatPointScheme::random(2, prime, static_cast<size_t>(r), mult, mix(seed, C, t));
        long dim = static_cast<long>(FatPointIdeal(z).symbolic_dim(1, d));
        rt.trial_dims.push_back(dim);
        if (dim != 0) rt.non_effective = false;
    }
    return rt;
}

NefProof prove_nef(const DivisorClass& F, int r, const std::vector<DivisorClass>& hints, const ProveNefOptions& opt) {
    if (F.r() != r) throw InputError("dimension_mismatch", "F does not live on the blow-up at r points");
    if (!F.integral()) throw InputError("non_integral", "F must be integral");
    const LatticeContext ctx(r);
    NefProof proof;
    Rational sq = intersect(F, F);
    if (sq < 0) {
        proof.status = NefStatus::not_nef;
        proof.note = "F^2 = " + to_string(sq) + " < 0, and nef classes have non-negative square";
        return proof;
    }
    if (F.d() < 0) {
        proof.status = NefStatus::not_nef;
        proof.note = "F.L < 0 with L nef and effective";
        return proof;
    }
    if (sq == 0) {
        proof.status = NefStatus::unresolved;
        proof.note = "F^2 = 0: the candidate-box method needs F^2 > 0";
        return proof;
    }
    auto H = opt.spanning_nef.empty() ? default_spanning_nef(r) : opt.spanning_nef;
    BoxOptions bo = opt.box;
    bo.shape = is_uniform(F) ? BoxShape::almost_uniform : BoxShape::any;
    proof.box = candidate_negative_classes(F, H, bo);

    std::vector<DivisorClass> members;
    if (bo.shape == BoxShape::almost_uniform) {
        for (const auto& a : almost_uniform_filter(proof.box.members)) members.push_back(a.cls);
        for (const auto& a : almost_uniform_filter(proof.box.candidates)) proof.filtered.push_back(a);
    } else {
        members = proof.box.members;
        for (const auto& c : proof.box.candidates) {
            auto a = as_almost_uniform(c);
            if (a) proof.filtered.push_back(*a);
        }
    }
    const auto K = canonical_class(ctx);
    for (const auto& C : members) {
        ProofStep st;
        st.candidate = C;
        st.triple = as_almost_uniform(C);
        Rational fc = intersect(F, C);
        if (fc >= 0) {
            st.step = "i";
            st.detail = "F.C = " + to_string(fc) + " >= 0";
            proof.log.push_back(st);
            continue;
        }
        Rational adj = intersect(C, C) + intersect(C, K);
        if (adj < -2) {
            st.step = "ii";
            st.detail = "C^2 + C.K = " + to_string(adj) + " < -2, so C is not a prime divisor";
            proof.log.push_back(st);
            continue;
        }
        if (st.triple) proof.after_adjunction.push_back(*st.triple);
        auto red = reduce_effectivity(C, hints);
        if (red.not_effective) {
            st.step = "iii";
            st.detail = red.summary;
            proof.log.push_back(st);
            continue;
        }
        auto rt = interpolation_rank_test(C, opt.seed, opt.trials, opt.prime);
        std::ostringstream os;
        os << "h^0 over F_" << opt.prime << " at random points:";
        for (long v : rt.trial_dims) os << " " << v;
        os << " (expected " << rt.expected_dim << ")";
        if (rt.non_effective) {
            st.step = "iv";
            st.detail = os.str() + "; no curve of this class through general points";
        } else {
            st.step = "unresolved";
            st.detail = os.str();
            proof.unresolved.push_back(C);
        }
        proof.log.push_back(st);
    }
    if (!proof.unresolved.empty()) {
        proof.status = NefStatus::unresolved;
    } else if (proof.box.s_certified) {
        proof.status = NefStatus::proved;
    } else {
        proof.status = NefStatus::conditional;
        proof.note = "every candidate eliminated, but " + proof.box.s_justification;
    }
    return proof;
}

NagataReport nagata_search(long r, long degree_bound, std::uint64_t seed, int trials, std::uint64_t prime) {
    if (r <= 9) throw InputError("bad_r", "nagata_search needs r > 9");
    if (degree_bound < 1) throw InputError("bad_bound", "degree bound must be >= 1");
    NagataReport rep;
    rep.r = r;
    rep.degree_bound = degree_bound;
    if (is_square(r)) {
        rep.square_shortcut = true;
        return rep;
    }
    const int ri = static_cast<int>(r);
    const LatticeContext ctx(ri);
    const auto K = canonical_class(ctx);
    for (long d = 1; d <= degree_bound; ++d) {
        for (long m = 0; m <= d; ++m) {
            for (long k = -m; m + k <= d; ++k) {
                long s = r * m + k;
                if (s <= 0) continue;
                if (!(d * d * r < s * s)) continue;
                auto C = DivisorClass::almost_uniform(ri, d, m, k, 1);
                ++rep.enumerated;
                Rational adj = intersect(C, C) + intersect(C, K);
                if (adj < -2) {
                    ++rep.killed_adjunction;
                    continue;
                }
                if (reduce_effectivity(C).not_effective) {
                    ++rep.killed_reduction;
                    continue;
                }
                if (interpolation_rank_test(C, seed, trials, prime).non_effective) {
                    ++rep.killed_rank;
                    continue;
                }
                rep.survivors.push_back(*as_almost_uniform(C));
            }
        }
    }
    return rep;
}

PairingEvidence pairing_evidence(const DivisorClass& F, const DivisorClass& D, long degree_bound) {
    const int r = F.r();
    if (D.r() != r) throw InputError("dimension_mismatch", "F and D live on different blow-ups");
    PairingEvidence ev;
    auto check = [&](const DivisorClass& C) {
        if (intersect(D, C) < 0) return;
        ++ev.checked;
        Rational v = intersect(F, C);
        if (!ev.worst || v < ev.worst_pairing) {
            ev.worst = C;
            ev.worst_pairing = v;
        }
        if (v <= 0) ev.all_positive = false;
    };
    for (int i = 1; i <= r; ++i) check(DivisorClass::exceptional(r, i));
    for (long d = 1; d <= degree_bound; ++d)
        for (long m = 0; m <= d; ++m)
            for (long k = -m; m + k <= d; ++k) check(DivisorClass::almost_uniform(r, d, m, k, 1));
    return ev;
}

}  // namespace blowup
