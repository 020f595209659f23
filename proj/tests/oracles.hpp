#pragma once
// Independent reference computations used only by tests.

#include "blowup/cones.hpp"
#include "blowup/lattice.hpp"
#include "blowup/seshadri.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using blowup::DivisorClass;
using blowup::Rational;

// Gram matrix check on basis vectors: L^2 = 1, E_i^2 = -1, all other pairings 0,
// plus a^2 evaluated as a diagonal form.
inline bool signature_ok(const DivisorClass& a, const DivisorClass& b) {
    const int r = a.r();
    if (blowup::intersect(DivisorClass::line(r), DivisorClass::line(r)) != 1) return false;
    for (int i = 1; i <= r; ++i) {
        auto Ei = DivisorClass::exceptional(r, i);
        if (blowup::intersect(Ei, Ei) != -1 || blowup::intersect(Ei, DivisorClass::line(r)) != 0) return false;
        for (int j = i + 1; j <= r; ++j)
            if (blowup::intersect(Ei, DivisorClass::exceptional(r, j)) != 0) return false;
    }
    Rational s = a.d() * b.d();
    for (int i = 1; i <= r; ++i) s -= a.m(i) * b.m(i);
    return s == blowup::intersect(a, b);
}

inline bool nonneg_mults(const DivisorClass& a) {
    for (int i = 1; i <= a.r(); ++i)
        if (a.m(i) < 0) return false;
    return true;
}

inline DivisorClass abs_mults(DivisorClass a) {
    for (size_t i = 1; i < a.size(); ++i) a[i] = abs(a[i]);
    return a;
}

inline std::vector<blowup::ConfigurationTag> finite_tags() {
    using blowup::ConfigurationTag;
    std::vector<ConfigurationTag> tags;
    for (int r = 2; r <= 10; ++r) tags.push_back(ConfigurationTag::parse("collinear", r));
    for (int r = 3; r <= 10; ++r) tags.push_back(ConfigurationTag::parse("conic", r));
    for (int r = 1; r <= 8; ++r) tags.push_back(ConfigurationTag::parse("generic", r));
    tags.push_back(ConfigurationTag::parse("collinear_triple", 4));
    return tags;
}

// (-1)-classes as the orbit of E_r under permutations and the quadratic
// transformation centred at the first three points. Valid for 3 <= r <= 8;
// smaller r is read off r = 3 by keeping classes supported on the first r points.
inline std::set<DivisorClass> weyl_orbit_neg_one(int r) {
    const int R = std::max(r, 3);
    auto canon = [](std::vector<long> v) {
        std::sort(v.begin() + 1, v.end(), std::greater<long>());
        return v;
    };
    std::set<std::vector<long>> seen;
    std::deque<std::vector<long>> todo;
    std::vector<long> start(static_cast<size_t>(R) + 1, 0);
    start.back() = -1;
    start = canon(start);
    seen.insert(start);
    todo.push_back(start);
    while (!todo.empty()) {
        auto v = todo.front();
        todo.pop_front();
        // every choice of three points for the quadratic transformation, via sorted canonical forms
        for (int a = 1; a <= R; ++a)
            for (int b = a + 1; b <= R; ++b)
                for (int c = b + 1; c <= R; ++c) {
                    auto w = v;
                    long d = v[0], ma = v[static_cast<size_t>(a)], mb = v[static_cast<size_t>(b)],
                         mc = v[static_cast<size_t>(c)];
                    w[0] = 2 * d - ma - mb - mc;
                    w[static_cast<size_t>(a)] = d - mb - mc;
                    w[static_cast<size_t>(b)] = d - ma - mc;
                    w[static_cast<size_t>(c)] = d - ma - mb;
                    w = canon(w);
                    if (seen.insert(w).second) todo.push_back(w);
                }
    }
    std::set<DivisorClass> out;
    for (auto v : seen) {
        std::vector<long> m(v.begin() + 1, v.end());
        std::sort(m.begin(), m.end());
        do {
            std::vector<long> full{v[0]};
            full.insert(full.end(), m.begin(), m.end());
            bool ok = true;
            for (int i = r + 1; i <= R; ++i)
                if (full[static_cast<size_t>(i)] != 0) ok = false;
            if (!ok) continue;
            full.resize(static_cast<size_t>(r) + 1);
            out.insert(DivisorClass::from_ints(full));
        } while (std::next_permutation(m.begin(), m.end()));
    }
    return out;
}

struct BoxInstance {
    DivisorClass F;
    std::vector<DivisorClass> H;
    blowup::BoxOptions opt;
};

inline std::vector<BoxInstance> toy_box_instances() {
    using blowup::default_spanning_nef;
    std::vector<BoxInstance> v;
    v.push_back({DivisorClass{3, 1, 1}, default_spanning_nef(2), {}});
    v.push_back({DivisorClass{2, 1}, default_spanning_nef(1), {}});
    v.push_back({DivisorClass{5, 2, 2, 2}, default_spanning_nef(3), {}});
    v.push_back({DivisorClass{5, 2, 2, 2, 2}, default_spanning_nef(4), {}});
    v.push_back({DivisorClass{4, 2, 1, 1, 0}, default_spanning_nef(4), {}});
    v.push_back({DivisorClass{5, 2, 2, 2, 2}, blowup::anticanonical_spanning_nef(4, 3), {}});
    return v;
}

// Full box 0 <= C.H_i <= s F.H_i by scanning the cube [-B, B]^(r+1) with
// B = 2 max_i (s F.H_i). For H = {L, L - E_i}: |d| <= U_0 and m_i in [d - U_i, d].
// For H = {aL - sum E, H_0 - E_i} with a = 3 and r <= 5: m_i in [-U_i, U_0] and |3d| <= (1 + r) max U.
inline std::vector<DivisorClass> brute_force_box(const DivisorClass& F, const std::vector<DivisorClass>& H, long s) {
    const int r = F.r();
    std::vector<long> U;
    std::vector<std::vector<long>> h;
    long B = 0;
    for (const auto& hc : H) {
        U.push_back(blowup::to_long(blowup::intersect(F, hc)) * s);
        B = std::max(B, 2 * U.back());
        h.push_back(hc.ints());
    }
    std::vector<DivisorClass> out;
    std::vector<long> x(static_cast<size_t>(r) + 1, -B);
    while (true) {
        bool ok = true, zero = true;
        for (long v : x)
            if (v != 0) zero = false;
        for (size_t i = 0; i < h.size() && ok; ++i) {
            long p = x[0] * h[i][0];
            for (size_t j = 1; j < x.size(); ++j) p -= x[j] * h[i][j];
            if (p < 0 || p > U[i]) ok = false;
        }
        if (ok && !zero) out.push_back(DivisorClass::from_ints(x));
        size_t k = 0;
        while (k < x.size() && x[k] == B) x[k++] = -B;
        if (k == x.size()) break;
        ++x[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
