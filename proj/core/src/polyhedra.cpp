#include "blowup/polyhedra.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace blowup {

IntVec primitive(IntVec v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool subset(const Bits& a, const Bits& b) {  // a subset of b
    for (size_t i = 0; i < a.size(); ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Indices of a maximal linearly independent subset of rows, greedy in order.
std::vector<size_t> independent_rows(const std::vector<IntVec>& rows, size_t n) {
    std::vector<std::vector<Rational>> basis;  // echelon rows
    std::vector<size_t> pivots, chosen;
    for (size_t idx = 0; idx < rows.size() && chosen.size() < n; ++idx) {
        std::vector<Rational> v(rows[idx].begin(), rows[idx].end());
        for (size_t b = 0; b < basis.size(); ++b) {
            if (v[pivots[b]] == 0) continue;
            Rational f = v[pivots[b]] / basis[b][pivots[b]];
            for (size_t j = 0; j < n; ++j) v[j] -= f * basis[b][j];
        }
        size_t p = 0;
        while (p < n && v[p] == 0) ++p;
        if (p == n) continue;
        basis.push_back(std::move(v));
        pivots.push_back(p);
        chosen.push_back(idx);
    }
    return chosen;
}

}  // namespace

std::vector<IntVec> extreme_rays(const std::vector<IntVec>& constraints) {
    if (constraints.empty()) throw InputError("empty_cone", "no constraints given");
    const size_t n = constraints[0].size();
    const size_t m = constraints.size();
    auto basis = independent_rows(constraints, n);
    if (basis.size() < n) throw InputError("not_pointed", "constraints do not span; cone is not pointed");

    // Initial simplicial cone: columns of the inverse of the basis matrix.
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = constraints[basis[i]][j];
        aug[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (aug[p][c] == 0) ++p;
        std::swap(aug[p], aug[c]);
        Rational inv = 1 / aug[c][c];
        for (auto& x : aug[c]) x *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rational f = aug[i][c];
            for (size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    const size_t words = (m + 63) / 64;
    std::vector<IntVec> rays;
    std::vector<Bits> zeros;
    std::vector<char> processed(m, 0);
    for (size_t b : basis) processed[b] = 1;
    for (size_t k = 0; k < n; ++k) {
        Integer den = 1;
        for (size_t i = 0; i < n; ++i) den = lcm(den, aug[i][n + k].get_den());
        IntVec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = Integer(aug[i][n + k] * Rational(den));
        rays.push_back(primitive(v));
        Bits z(words, 0);
        for (size_t j = 0; j < n; ++j)
            if (j != k) z[basis[j] / 64] |= (std::uint64_t{1} << (basis[j] % 64));
        zeros.push_back(z);
    }

    for (size_t c = 0; c < m; ++c) {
        if (processed[c]) continue;
        const IntVec& a = constraints[c];
        std::vector<Integer> val(rays.size());
        std::vector<size_t> pos, neg, zer;
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i]);
            int s = sgn(val[i]);
            (s > 0 ? pos : (s < 0 ? neg : zer)).push_back(i);
        }
        processed[c] = 1;
        if (neg.empty()) {
            for (size_t i : zer) zeros[i][c / 64] |= (std::uint64_t{1} << (c % 64));
            continue;
        }
        std::vector<IntVec> nrays;
        std::vector<Bits> nzeros;
        for (size_t i : pos) {
            nrays.push_back(rays[i]);
            nzeros.push_back(zeros[i]);
        }
        for (size_t i : zer) {
            nrays.push_back(rays[i]);
            Bits z = zeros[i];
            z[c / 64] |= (std::uint64_t{1} << (c % 64));
            nzeros.push_back(z);
        }
        for (size_t p : pos) {
            for (size_t q : neg) {
                Bits common(words);
                size_t cnt = 0;
                for (size_t w = 0; w < words; ++w) {
                    common[w] = zeros[p][w] & zeros[q][w];
                    cnt += static_cast<size_t>(__builtin_popcountll(common[w]));
                }
                if (cnt + 2 < n) continue;
                bool adjacent = true;
                for (size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == q) continue;
                    if (subset(common, zeros[o])) adjacent = false;
                }
                if (!adjacent) continue;
                IntVec v(n);
                for (size_t j = 0; j < n; ++j) v[j] = val[p] * rays[q][j] - val[q] * rays[p][j];
                nrays.push_back(primitive(v));
                common[c / 64] |= (std::uint64_t{1} << (c % 64));
                nzeros.push_back(common);
            }
        }
        rays = std::move(nrays);
        zeros = std::move(nzeros);
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

namespace {

bool normalize(IntegerPolytope::Row& row) {
    size_t k = 0;
    while (k < row.a.size() && row.a[k] == 0) ++k;
    if (k == row.a.size()) return false;
    Rational s = abs(row.a[k]);
    for (auto& x : row.a) x /= s;
    row.b /= s;
    return true;
}

bool row_less(const IntegerPolytope::Row& x, const IntegerPolytope::Row& y) {
    for (size_t i = 0; i < x.a.size(); ++i) {
        int c = cmp(x.a[i], y.a[i]);
        if (c != 0) return c < 0;
    }
    return x.b < y.b;
}

bool same_dir(const IntegerPolytope::Row& x, const IntegerPolytope::Row& y) { return x.a == y.a; }

// Keep only the tightest bound per normalized direction.
void dedupe(std::vector<IntegerPolytope::Row>& rows) {
    std::sort(rows.begin(), rows.end(), row_less);
    std::vector<IntegerPolytope::Row> out;
    for (auto& r : rows) {
        if (!out.empty() && same_dir(out.back(), r)) continue;
        out.push_back(std::move(r));
    }
    rows = std::move(out);
}

}  // namespace

void IntegerPolytope::add_le(std::vector<Rational> a, Rational b) {
    if (a.size() != n_) throw InputError("dimension_mismatch", "constraint length differs from variable count");
    rows_.push_back({std::move(a), std::move(b)});
    projected_ = false;
}

void IntegerPolytope::add_ge(std::vector<Rational> a, Rational b) {
    for (auto& x : a) x = -x;
    add_le(std::move(a), -b);
}

void IntegerPolytope::project() const {
    if (projected_) return;
    levels_.assign(n_, {});
    std::vector<Row> cur;
    bool infeasible = false;
    for (auto r : rows_) {
        if (normalize(r))
            cur.push_back(std::move(r));
        else if (r.b < 0)
            infeasible = true;
    }
    dedupe(cur);
    for (size_t k = n_; k-- > 0;) {
        levels_[k] = cur;
        if (k == 0) break;
        std::vector<Row> pos, neg, next;
        for (auto& r : cur) {
            int s = sgn(r.a[k]);
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
            else
                next.push_back(r);
        }
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                Row c;
                c.a.resize(n_);
                Rational fp = -q.a[k], fq = p.a[k];
                for (size_t j = 0; j < n_; ++j) c.a[j] = fp * p.a[j] + fq * q.a[j];
                c.b = fp * p.b + fq * q.b;
                c.a[k] = 0;
                if (normalize(c))
                    next.push_back(std::move(c));
                else if (c.b < 0)
                    infeasible = true;
            }
        }
        dedupe(next);
        if (next.size() > 200000) throw InputError("projection_blowup", "Fourier-Motzkin projection too large");
        cur = std::move(next);
    }
    if (infeasible) levels_.assign(n_, {Row{std::vector<Rational>(n_), Rational(-1)}});
    projected_ = true;
}

std::vector<std::pair<long, long>> IntegerPolytope::coordinate_box() const {
    project();
    std::vector<std::pair<long, long>> out;
    for (size_t k = 0; k < n_; ++k) {
        // Re-project with x_k moved to the front; level 0 then bounds it.
        IntegerPolytope q(n_);
        for (const auto& r : rows_) {
            std::vector<Rational> a = r.a;
            std::swap(a[0], a[k]);
            q.add_le(a, r.b);
        }
        q.project();
        Rational lo, hi;
        bool has_lo = false, has_hi = false;
        for (const auto& r : q.levels_[0]) {
            if (r.a[0] > 0) {
                Rational v = r.b / r.a[0];
                if (!has_hi || v < hi) hi = v;
                has_hi = true;
            } else if (r.a[0] < 0) {
                Rational v = r.b / r.a[0];
                if (!has_lo || v > lo) lo = v;
                has_lo = true;
            }
        }
        if (!has_lo || !has_hi) throw InputError("unbounded", "polyhedron is unbounded in coordinate " + std::to_string(k));
        out.emplace_back(ceil_q(lo).get_si(), floor_q(hi).get_si());
    }
    return out;
}

size_t IntegerPolytope::enumerate(const std::function<bool(const std::vector<long>&)>& visit,
                                  size_t max_points) const {
    project();
    std::vector<long> x(n_);
    size_t count = 0;
    bool stop = false;
    std::function<void(size_t)> rec = [&](size_t k) {
        if (stop) return;
        Rational lo, hi;
        bool has_lo = false, has_hi = false;
        for (const auto& r : levels_[k]) {
            Rational rhs = r.b;
            for (size_t j = 0; j < k; ++j)
                if (r.a[j] != 0) rhs -= r.a[j] * x[j];
            if (r.a[k] == 0) {
                if (rhs < 0) return;
                continue;
            }
            Rational v = rhs / r.a[k];
            if (r.a[k] > 0) {
                if (!has_hi || v < hi) hi = v;
                has_hi = true;
            } else {
                if (!has_lo || v > lo) lo = v;
                has_lo = true;
            }
        }
        if (!has_lo || !has_hi)
            throw InputError("unbounded", "polyhedron is unbounded in coordinate " + std::to_string(k));
        long a = ceil_q(lo).get_si(), b = floor_q(hi).get_si();
        for (long v = a; v <= b && !stop; ++v) {
            x[k] = v;
            if (k + 1 == n_) {
                ++count;
                if (count > max_points) throw InputError("box_too_large", "integer point enumeration exceeded its cap");
                if (!visit(x)) stop = true;
            } else {
                rec(k + 1);
            }
        }
    };
    if (n_ == 0) return 0;
    rec(0);
    return count;
}

}  // namespace blowup
