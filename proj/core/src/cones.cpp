#include "blowup/cones.hpp"

#include "blowup/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace blowup {

namespace {

DivisorClass L_(int r) { return DivisorClass::line(r); }
DivisorClass E_(int r, int i) { return DivisorClass::exceptional(r, i); }

// d L - sum over listed indices of E_i
DivisorClass curve(int r, long d, std::initializer_list<int> through) {
    auto c = DivisorClass::zero(r);
    c[0] = d;
    for (int i : through) c[static_cast<size_t>(i)] += 1;
    return c;
}

DivisorClass through_first(int r, long d, int k) {  // d L - E_1 - ... - E_k
    auto c = DivisorClass::zero(r);
    c[0] = d;
    for (int i = 1; i <= k; ++i) c[static_cast<size_t>(i)] = 1;
    return c;
}

void sort_unique(std::vector<DivisorClass>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<DivisorClass> dual_rays(const std::vector<DivisorClass>& gens, int r) {
    std::vector<IntVec> cons;
    for (const auto& g : gens) {
        IntVec a;
        for (size_t i = 0; i < g.size(); ++i) a.push_back(Integer(i == 0 ? g[i] : Rational(-g[i])));
        cons.push_back(std::move(a));
    }
    std::vector<DivisorClass> out;
    for (const auto& ray : extreme_rays(cons)) {
        std::vector<Rational> c(ray.begin(), ray.end());
        out.emplace_back(std::move(c));
    }
    (void)r;
    sort_unique(out);
    return out;
}

std::vector<DivisorClass> eff_list(const ConfigurationTag& tag) {
    const int r = tag.r;
    std::vector<DivisorClass> g;
    switch (tag.kind) {
        case ConfigKind::collinear:
            g.push_back(through_first(r, 1, r));
            for (int i = 1; i <= r; ++i) g.push_back(E_(r, i));
            break;
        case ConfigKind::conic:
            for (int i = 1; i <= r; ++i) g.push_back(E_(r, i));
            for (int i = 1; i <= r; ++i)
                for (int j = i + 1; j <= r; ++j) g.push_back(curve(r, 1, {i, j}));
            g.push_back(through_first(r, 2, r));
            break;
        case ConfigKind::cubic_chain:
            g.push_back(E_(r, r));
            for (int i = 1; i < r; ++i) g.push_back(E_(r, i) - E_(r, i + 1));
            g.push_back(curve(r, 1, {1, 2, 3}));
            g.push_back(-canonical_class(LatticeContext(r)));
            break;
        case ConfigKind::generic:
            g = enumerate_neg_one_classes(r);
            if (r == 0) g.push_back(L_(0));
            if (r == 1) g.push_back(curve(1, 1, {1}));
            if (r == 8) g.push_back(-canonical_class(LatticeContext(8)));
            break;
        case ConfigKind::collinear_triple:
            for (int i = 1; i <= 4; ++i) g.push_back(E_(4, i));
            g.push_back(curve(4, 1, {1, 2, 3}));
            for (int i = 1; i <= 3; ++i) g.push_back(curve(4, 1, {i, 4}));
            break;
    }
    sort_unique(g);
    return g;
}

struct TagKey {
    ConfigKind kind;
    int r;
    bool operator<(const TagKey& o) const { return kind != o.kind ? kind < o.kind : r < o.r; }
};

const std::vector<DivisorClass>& cached_eff(const ConfigurationTag& tag) {
    static std::mutex mu;
    static std::map<TagKey, std::vector<DivisorClass>> cache;
    std::lock_guard<std::mutex> lock(mu);
    TagKey key{tag.kind, tag.r};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, eff_list(tag)).first->second;
}

// Cone descriptions are pure functions of the tag; cache them. The nef rays
// come from a double description and are only built on request.
const ConeDescription& cached_cone(const ConfigurationTag& tag) {
    static std::mutex mu;
    static std::map<TagKey, ConeDescription> cache;
    std::lock_guard<std::mutex> lock(mu);
    TagKey key{tag.kind, tag.r};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ConeDescription cd;
    cd.tag = tag;
    cd.eff_generators = cached_eff(tag);
    const int r = tag.r;
    if (tag.kind == ConfigKind::collinear) {
        cd.nef_generators.push_back(L_(r));
        for (int i = 1; i <= r; ++i) cd.nef_generators.push_back(curve(r, 1, {i}));
        sort_unique(cd.nef_generators);
    } else {
        cd.nef_generators = dual_rays(cd.eff_generators, r);
    }
    if (tag.kind == ConfigKind::cubic_chain) {
        cd.nef_ladder.push_back(L_(r));
        cd.nef_ladder.push_back(through_first(r, 1, 1));
        cd.nef_ladder.push_back(through_first(r, 2, 2));
        for (int k = 3; k <= r; ++k) cd.nef_ladder.push_back(through_first(r, 3, k));
    }
    return cache.emplace(key, std::move(cd)).first->second;
}

long ival(const Rational& q) { return to_long(q); }

}  // namespace

ConfigurationTag ConfigurationTag::parse(const std::string& name, int r) {
    ConfigurationTag t;
    t.r = r;
    if (name == "collinear")
        t.kind = ConfigKind::collinear;
    else if (name == "conic")
        t.kind = ConfigKind::conic;
    else if (name == "cubic_chain" || name == "cubic-chain")
        t.kind = ConfigKind::cubic_chain;
    else if (name == "generic")
        t.kind = ConfigKind::generic;
    else if (name == "collinear_triple" || name == "collinear-triple") {
        t.kind = ConfigKind::collinear_triple;
        if (r != 4 && r != 0) throw InputError("unsupported_tag", "collinear_triple has exactly 4 points");
        t.r = 4;
    } else
        throw InputError("unknown_tag", "unknown configuration tag '" + name + "'");
    if (r < 0) throw InputError("bad_r", "number of points must be non-negative");
    return t;
}

std::string ConfigurationTag::name() const {
    switch (kind) {
        case ConfigKind::collinear: return "collinear";
        case ConfigKind::conic: return "conic";
        case ConfigKind::cubic_chain: return "cubic_chain";
        case ConfigKind::generic: return "generic";
        case ConfigKind::collinear_triple: return "collinear_triple";
    }
    return "?";
}

void ConfigurationTag::validate() const {
    switch (kind) {
        case ConfigKind::collinear:
            if (r < 1) throw InputError("unsupported_tag", "collinear needs r >= 1");
            break;
        case ConfigKind::conic:
            if (r < 3) throw InputError("unsupported_tag", "conic needs r >= 3");
            break;
        case ConfigKind::cubic_chain:
            if (r < 3) throw InputError("unsupported_tag", "cubic_chain needs r >= 3");
            break;
        case ConfigKind::generic:
            if (r < 0) throw InputError("unsupported_tag", "generic needs r >= 0");
            if (r >= 9)
                throw InputError("not_finitely_generated",
                                 "generic(" + std::to_string(r) +
                                     "): the effective cone of 9 or more general points is not finitely generated "
                                     "(infinitely many (-1)-curves)");
            break;
        case ConfigKind::collinear_triple:
            if (r != 4) throw InputError("unsupported_tag", "collinear_triple has exactly 4 points");
            break;
    }
}

std::vector<DivisorClass> enumerate_neg_one_classes(int r) {
    if (r < 0) throw InputError("bad_r", "r must be non-negative");
    if (r >= 9)
        throw InputError("infinitely_many", "for r >= 9 there are infinitely many (-1)-classes");
    const long DMAX = 18, MMAX = 7;
    std::vector<DivisorClass> out;
    std::vector<long> m(static_cast<size_t>(r));
    for (long d = 0; d <= DMAX; ++d) {
        const long S = 3 * d - 1;      // E.K = -1
        const long Q = d * d + 1;      // E^2 = -1
        std::function<void(int, long, long)> rec = [&](int i, long s, long q) {
            int left = r - i;
            if (q < 0) return;
            if (left == 0) {
                if (s == 0 && q == 0) {
                    std::vector<long> c{d};
                    c.insert(c.end(), m.begin(), m.end());
                    out.push_back(DivisorClass::from_ints(c));
                }
                return;
            }
            if (s * s > static_cast<long>(left) * q) return;  // Cauchy-Schwarz
            if (q > left * MMAX * MMAX) return;
            for (long v = -MMAX; v <= MMAX; ++v) {
                m[static_cast<size_t>(i)] = v;
                rec(i + 1, s - v, q - v * v);
            }
        };
        rec(0, S, Q);
    }
    sort_unique(out);
    return out;
}

ConeDescription cone_generators(const ConfigurationTag& tag) {
    tag.validate();
    return cached_cone(tag);
}

std::vector<DivisorClass> eff_generators(const ConfigurationTag& tag) {
    tag.validate();
    return cached_eff(tag);
}

std::optional<std::vector<long>> ladder_coefficients(const DivisorClass& F) {
    const int r = F.r();
    auto a = [&](int i) -> long { return i > r ? 0 : ival(F.m(i)); };
    std::vector<long> c(static_cast<size_t>(r) + 1);
    c[0] = ival(F.d()) - a(1) - a(2) - a(3);
    for (int k = 1; k <= r; ++k) c[static_cast<size_t>(k)] = a(k) - a(k + 1);
    for (long x : c)
        if (x < 0) return std::nullopt;
    return c;
}

bool is_nef(const DivisorClass& F, const ConfigurationTag& tag) {
    tag.validate();
    if (F.r() != tag.r) throw InputError("dimension_mismatch", "class rank does not match the configuration");
    if (!F.integral()) throw InputError("non_integral", "is_nef needs an integral class");
    if (tag.kind == ConfigKind::cubic_chain) {
        auto mK = -canonical_class(LatticeContext(tag.r));
        return ladder_coefficients(F).has_value() && intersect(mK, F) >= 0;
    }
    for (const auto& g : cached_eff(tag))
        if (intersect(F, g) < 0) return false;
    return true;
}

DivisorClass recombine(const Decomposition& dec, int r) {
    auto s = DivisorClass::zero(r);
    for (const auto& [g, c] : dec) s += g * Rational(c);
    return s;
}

namespace {

struct Builder {
    int r;
    std::map<DivisorClass, long> coef;
    void add(const DivisorClass& g, long c) {
        if (c != 0) coef[g] += c;
    }
    Decomposition done() const {
        Decomposition d;
        for (const auto& [g, c] : coef)
            if (c != 0) d.emplace_back(g, c);
        return d;
    }
};

// E_i as (E_i - E_{i+1}) + ... + (E_{r-1} - E_r) + E_r.
void add_exceptional_chain(Builder& b, int i, long c) {
    const int r = b.r;
    for (int j = i; j < r; ++j) b.add(E_(r, j) - E_(r, j + 1), c);
    b.add(E_(r, r), c);
}

void decompose_nef_collinear(const DivisorClass& C, Builder& b) {
    const int r = b.r;
    auto lam = through_first(r, 1, r);
    long cl = ival(C.d() - C.msum());
    // cl * L + sum m_i (L - E_i), with L = Lambda + sum E_j.
    b.add(lam, cl);
    for (int j = 1; j <= r; ++j) b.add(E_(r, j), cl);
    for (int i = 1; i <= r; ++i) {
        long mi = ival(C.m(i));
        b.add(lam, mi);
        for (int j = 1; j <= r; ++j)
            if (j != i) b.add(E_(r, j), mi);
    }
}

void decompose_nef_conic(const DivisorClass& C, Builder& b) {
    const int r = b.r;
    std::vector<int> perm(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) perm[static_cast<size_t>(i)] = i + 1;
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) { return C.m(x) > C.m(y); });
    auto a = [&](int k) -> long { return k > r ? 0 : ival(C.m(perm[static_cast<size_t>(k - 1)])); };
    auto e = [&](int k) { return perm[static_cast<size_t>(k - 1)]; };  // sorted position -> index
    const long a0 = ival(C.d());
    auto Lij = [&](int i, int j) { return curve(r, 1, {i, j}); };
    auto D = through_first(r, 2, r);
    // (a0-a1-a3) L + (a1-a2)(L-E1) + (a2-a3) L12 + sum_{i>=3} (a_i - a_{i+1}) D_i
    long cL = a0 - a(1) - a(3), cL1 = a(1) - a(2), c12 = a(2) - a(3);
    b.add(Lij(e(1), e(2)), cL + cL1 + c12);
    b.add(E_(r, e(1)), cL);
    b.add(E_(r, e(2)), cL + cL1);
    for (int i = 3; i <= r; ++i) {
        long ci = a(i) - a(i + 1);
        b.add(D, ci);
        for (int j = i + 1; j <= r; ++j) b.add(E_(r, e(j)), ci);
    }
}

void decompose_nef_cubic(const DivisorClass& C, Builder& b) {
    const int r = b.r;
    auto c = *ladder_coefficients(C);
    auto flex = curve(r, 1, {1, 2, 3});
    auto mK = -canonical_class(LatticeContext(r));
    // Q_0 = L = flex + E1 + E2 + E3, Q_1 = flex + E2 + E3, Q_2 = flex + L + E3.
    long q0 = c[0] + c[2];
    b.add(flex, q0 + c[1] + c[2]);
    add_exceptional_chain(b, 1, q0);
    add_exceptional_chain(b, 2, q0 + c[1]);
    add_exceptional_chain(b, 3, q0 + c[1] + c[2]);
    for (int k = 3; k <= r; ++k) {
        long ck = c[static_cast<size_t>(k)];
        b.add(mK, ck);
        for (int j = k + 1; j <= r; ++j) add_exceptional_chain(b, j, ck);
    }
}

// Effectivity of F for general points, r <= 8: -K is ample, so subtract forced
// (-1)-curves until either F is nef (then effective by Riemann-Roch) or -K.F < 0.
bool generic_effective(const DivisorClass& F0, const std::vector<DivisorClass>& gens) {
    const int r = F0.r();
    auto mK = -canonical_class(LatticeContext(r));
    DivisorClass F = F0;
    while (true) {
        if (F.d() < 0 || intersect(mK, F) < 0) return false;
        bool moved = false;
        for (const auto& g : gens) {
            if (intersect(g, g) < 0 && intersect(F, g) < 0) {
                F -= g;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    for (const auto& g : gens)
        if (intersect(F, g) < 0) return false;
    return true;
}

}  // namespace

std::optional<Decomposition> decompose_effective(const DivisorClass& C0, const ConfigurationTag& tag) {
    tag.validate();
    if (C0.r() != tag.r) throw InputError("dimension_mismatch", "class rank does not match the configuration");
    if (!C0.integral()) throw InputError("non_integral", "decompose_effective needs an integral class");
    const int r = tag.r;
    const auto& gens = cached_eff(tag);
    const ConeDescription* cone = tag.kind == ConfigKind::generic ? nullptr : &cached_cone(tag);

    DivisorClass A = DivisorClass::zero(r);
    if (!cone)
        A = -canonical_class(LatticeContext(r));
    else
        for (const auto& n : cone->nef_generators) A += n;
    for (const auto& g : gens)
        if (intersect(A, g) <= 0) throw InconsistencyError("no_ample", "termination functional is not positive on " + g.pretty());

    Builder b{r, {}};
    DivisorClass C = C0;
    // Negative curves pairing negatively with C are fixed components.
    while (true) {
        if (intersect(A, C) < 0 || C.d() < 0) return std::nullopt;
        bool moved = false;
        for (const auto& g : gens) {
            if (intersect(g, g) < 0 && intersect(C, g) < 0) {
                C -= g;
                b.add(g, 1);
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    for (const auto& g : gens)
        if (intersect(C, g) < 0) return std::nullopt;  // pairs negatively with a prime of non-negative square

    switch (tag.kind) {
        case ConfigKind::collinear: decompose_nef_collinear(C, b); break;
        case ConfigKind::conic: decompose_nef_conic(C, b); break;
        case ConfigKind::cubic_chain: decompose_nef_cubic(C, b); break;
        case ConfigKind::generic:
        case ConfigKind::collinear_triple: {
            auto effective = [&](const DivisorClass& F) {
                if (tag.kind == ConfigKind::generic) return generic_effective(F, gens);
                for (const auto& n : cone->nef_generators)
                    if (intersect(F, n) < 0) return false;
                return true;
            };
            std::set<DivisorClass> failed;
            std::function<bool(const DivisorClass&, Builder&)> dfs = [&](const DivisorClass& F, Builder& out) {
                if (F == DivisorClass::zero(r)) return true;
                if (failed.count(F)) return false;
                for (const auto& g : gens) {
                    DivisorClass rest = F - g;
                    if (!effective(rest)) continue;
                    Builder sub{r, {}};
                    if (dfs(rest, sub)) {
                        out.add(g, 1);
                        for (const auto& [h, c] : sub.coef) out.add(h, c);
                        return true;
                    }
                }
                failed.insert(F);
                return false;
            };
            if (!dfs(C, b))
                throw InconsistencyError("no_integer_decomposition",
                                         C.pretty() + " is in the cone but no integral certificate was found");
            break;
        }
    }
    auto dec = b.done();
    if (recombine(dec, r) != C0) throw InconsistencyError("bad_certificate", "decomposition does not recombine to " + C0.pretty());
    for (const auto& [g, c] : dec)
        if (c < 0) throw InconsistencyError("bad_certificate", "negative coefficient in decomposition");
    return dec;
}

}  // namespace blowup
