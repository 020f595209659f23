#include "blowup/fatpoints.hpp"

#include "blowup/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>
#include <variant>

namespace blowup {

namespace {

constexpr long kMaxDegree = 255;  // exponents are packed into 8-bit lanes

std::uint64_t pack(const std::vector<int>& e) {
    std::uint64_t k = 0;
    for (size_t i = 0; i < e.size(); ++i) k |= static_cast<std::uint64_t>(e[i]) << (8 * i);
    return k;
}

// grevlex: a > b iff the last nonzero entry of a - b is negative
bool grevlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

struct MonoTable {
    std::vector<std::vector<int>> exps;
    std::vector<std::uint64_t> keys;
    std::unordered_map<std::uint64_t, size_t> index;
};

MonoTable make_table(int n, long t) {
    MonoTable tab;
    tab.exps = monomials(n, t);
    for (size_t i = 0; i < tab.exps.size(); ++i) {
        tab.keys.push_back(pack(tab.exps[i]));
        tab.index.emplace(tab.keys.back(), i);
    }
    return tab;
}

Rational to_q(const RationalField&, const Rational& x) { return x; }
Rational to_q(const PrimeField&, std::uint64_t x) { return Rational(Integer(static_cast<unsigned long>(x))); }

}  // namespace

std::vector<std::vector<int>> monomials(int n, long t) {
    if (n < 1) throw InputError("bad_dimension", "ambient dimension must be >= 1");
    if (t < 0) return {};
    if (t > kMaxDegree) throw InputError("degree_overflow", "degree above " + std::to_string(kMaxDegree));
    std::vector<std::vector<int>> out;
    std::vector<int> e(static_cast<size_t>(n) + 1, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == e.size() - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, static_cast<int>(t));
    std::sort(out.begin(), out.end(), grevlex_greater);
    return out;
}

size_t ComponentBasis::ncols() const { return static_cast<size_t>(binomial(t + n, n).get_ui()); }

std::string to_string(BHVerdict v) {
    switch (v) {
        case BHVerdict::fails_by_alpha: return "fails_by_alpha";
        case BHVerdict::holds_by_reg: return "holds_by_reg";
        case BHVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

long FatPointScheme::degree() const {
    long s = 0;
    for (long m : multiplicities) s += binomial(m + n - 1, n).get_si();
    return s;
}

bool FatPointScheme::reduced() const {
    return std::all_of(multiplicities.begin(), multiplicities.end(), [](long m) { return m == 1; });
}

FatPointScheme FatPointScheme::make(int n, FieldSpec field, std::vector<std::vector<Rational>> points,
                                    std::vector<long> multiplicities) {
    if (n < 1) throw InputError("bad_dimension", "ambient dimension must be >= 1");
    if (points.size() != multiplicities.size())
        throw InputError("bad_scheme", "need one multiplicity per point");
    std::optional<PrimeField> fp;
    if (!field.is_rational()) fp.emplace(field.p);
    for (long m : multiplicities)
        if (m < 0) throw InputError("bad_multiplicity", "multiplicities must be non-negative");
    for (auto& pt : points) {
        if (pt.size() != static_cast<size_t>(n) + 1)
            throw InputError("bad_point", "a point of P^" + std::to_string(n) + " needs " + std::to_string(n + 1) + " coordinates");
        if (fp) {
            for (auto& c : pt) c = Rational(Integer(static_cast<unsigned long>(fp->from_rational(c))));
            size_t k = 0;
            while (k < pt.size() && pt[k] == 0) ++k;
            if (k == pt.size()) throw InputError("bad_point", "the zero vector is not a projective point");
            auto inv = fp->inv(fp->from_rational(pt[k]));
            for (auto& c : pt) c = Rational(Integer(static_cast<unsigned long>(fp->mul(fp->from_rational(c), inv))));
        } else {
            size_t k = 0;
            while (k < pt.size() && pt[k] == 0) ++k;
            if (k == pt.size()) throw InputError("bad_point", "the zero vector is not a projective point");
            Rational lead = pt[k];
            for (auto& c : pt) c /= lead;
        }
    }
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw InputError("repeated_point", "points must be distinct");
    FatPointScheme z;
    z.n = n;
    z.field = field;
    z.points = std::move(points);
    z.multiplicities = std::move(multiplicities);
    return z;
}

FatPointScheme FatPointScheme::random(int n, std::uint64_t p, size_t count, std::vector<long> multiplicities,
                                      std::uint64_t seed) {
    if (p == 0) throw InputError("bad_field", "random points need a prime field");
    PrimeField f(p);
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Rational>> pts;
    std::vector<std::vector<std::uint64_t>> seen;
    size_t attempts = 0;
    while (pts.size() < count) {
        if (++attempts > 1000 * (count + 1)) throw InputError("too_many_points", "not enough distinct points over F_p");
        std::vector<std::uint64_t> v(static_cast<size_t>(n) + 1);
        for (auto& x : v) x = rng() % p;
        size_t k = 0;
        while (k < v.size() && v[k] == 0) ++k;
        if (k == v.size()) continue;
        auto inv = f.inv(v[k]);
        for (auto& x : v) x = f.mul(x, inv);
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
        seen.push_back(v);
        std::vector<Rational> q;
        for (auto x : v) q.emplace_back(Integer(static_cast<unsigned long>(x)));
        pts.push_back(std::move(q));
    }
    if (multiplicities.size() == 1 && count != 1) multiplicities.assign(count, multiplicities[0]);
    return make(n, FieldSpec{p}, std::move(pts), std::move(multiplicities));
}

FatPointScheme FatPointScheme::coordinate_triangle(FieldSpec field) {
    return make(2, field, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 1, 1});
}

// ---------------------------------------------------------------------------

namespace {

template <class F>
class Engine {
public:
    using E = typename F::Elem;

    Engine(F f, const FatPointScheme& z) : f_(f), z_(z) {
        for (const auto& pt : z.points) {
            std::vector<E> v;
            for (const auto& c : pt) v.push_back(f_.from_rational(c));
            size_t k = 0;
            while (f_.is_zero(v[k])) ++k;
            chart_.push_back(k);
            pts_.push_back(std::move(v));
        }
    }

    const MonoTable& table(long t) {
        auto it = tables_.find(t);
        if (it != tables_.end()) return it->second;
        return tables_.emplace(t, make_table(z_.n, t)).first->second;
    }

    size_t ncols(long t) { return table(t).exps.size(); }

    // Vanishing of all Hasse derivatives of order < mu in the affine chart
    // of each point; valid in every characteristic.
    Rows<F> conditions(long m, long t) {
        const auto& tab = table(t);
        const size_t nv = static_cast<size_t>(z_.n) + 1;
        // Pascal table mod the characteristic.
        std::vector<std::vector<E>> binom(static_cast<size_t>(t) + 1, std::vector<E>(static_cast<size_t>(t) + 1, f_.zero()));
        for (size_t a = 0; a <= static_cast<size_t>(t); ++a) {
            binom[a][0] = f_.one();
            for (size_t b = 1; b <= a; ++b) binom[a][b] = f_.add(binom[a - 1][b - 1], b <= a - 1 ? binom[a - 1][b] : f_.zero());
        }
        Rows<F> rows;
        for (size_t i = 0; i < pts_.size(); ++i) {
            long mu = m * z_.multiplicities[i];
            if (mu <= 0) continue;
            const auto& p = pts_[i];
            size_t j = chart_[i];
            std::vector<std::vector<E>> pw(nv, std::vector<E>(static_cast<size_t>(t) + 1));
            for (size_t v = 0; v < nv; ++v) {
                pw[v][0] = f_.one();
                for (size_t e = 1; e <= static_cast<size_t>(t); ++e) pw[v][e] = f_.mul(pw[v][e - 1], p[v]);
            }
            long top = std::min(mu - 1, t);
            std::vector<int> beta(nv, 0);
            std::function<void(size_t, long)> rec = [&](size_t v, long left) {
                if (v == nv) {
                    std::vector<E> row(tab.exps.size(), f_.zero());
                    for (size_t c = 0; c < tab.exps.size(); ++c) {
                        const auto& a = tab.exps[c];
                        E val = f_.one();
                        for (size_t w = 0; w < nv && !f_.is_zero(val); ++w) {
                            if (w == j) continue;
                            if (a[w] < beta[w]) {
                                val = f_.zero();
                                break;
                            }
                            val = f_.mul(val, f_.mul(binom[static_cast<size_t>(a[w])][static_cast<size_t>(beta[w])],
                                                     pw[w][static_cast<size_t>(a[w] - beta[w])]));
                        }
                        row[c] = val;
                    }
                    rows.push_back(std::move(row));
                    return;
                }
                if (v == j) {
                    beta[v] = 0;
                    rec(v + 1, left);
                    return;
                }
                for (long b = 0; b <= left; ++b) {
                    beta[v] = static_cast<int>(b);
                    rec(v + 1, left - b);
                }
                beta[v] = 0;
            };
            rec(0, top);
        }
        return rows;
    }

    const Rows<F>& symbolic(long m, long t) {
        auto key = std::make_pair(m, t);
        auto it = sym_.find(key);
        if (it != sym_.end()) return it->second;
        size_t nc = ncols(t);
        Rows<F> basis;
        if (t >= 0) {
            auto cond = conditions(m, t);
            if (cond.empty()) {
                for (size_t c = 0; c < nc; ++c) {
                    std::vector<E> v(nc, f_.zero());
                    v[c] = f_.one();
                    basis.push_back(std::move(v));
                }
            } else {
                basis = nullspace(f_, std::move(cond), nc);
            }
        }
        symdim_[key] = basis.size();
        return sym_.emplace(key, std::move(basis)).first->second;
    }

    size_t symbolic_dim(long m, long t) {
        if (t < 0) return 0;
        auto key = std::make_pair(m, t);
        auto it = symdim_.find(key);
        if (it != symdim_.end()) return it->second;
        size_t nc = ncols(t);
        auto cond = conditions(m, t);
        size_t d = nc - (cond.empty() ? 0 : rank_of(f_, std::move(cond), nc));
        symdim_[key] = d;
        return d;
    }

    long max_mult() const {
        long mx = 0;
        for (long m : z_.multiplicities) mx = std::max(mx, m);
        return mx;
    }

    long alpha(long m) {
        auto it = alpha_.find(m);
        if (it != alpha_.end()) return it->second;
        long total = 0;
        for (long v : z_.multiplicities) total += v;
        long lo = m * max_mult();
        long hi = std::max(lo, m * total);
        long found = -1;
        for (long t = lo; t <= hi; ++t) {
            if (symbolic_dim(m, t) > 0) {
                found = t;
                break;
            }
        }
        if (found < 0) throw InconsistencyError("alpha_not_found", "no form found below the product-of-lines bound");
        alpha_[m] = found;
        return found;
    }

    long hilbert(long t) {
        if (t < 0) return 0;
        return static_cast<long>(ncols(t)) - static_cast<long>(symbolic_dim(1, t));
    }

    long regularity() {
        if (reg_) return *reg_;
        long prev = 0;
        for (long t = 0;; ++t) {
            long h = hilbert(t);
            if (h == prev) {
                reg_ = t;
                return t;
            }
            prev = h;
            if (t > z_.degree() + 2) throw InconsistencyError("no_regularity", "Hilbert function failed to stabilize");
        }
    }

    long generator_top() {
        if (gen_top_ < 0) gen_top_ = regularity() + 1;
        return gen_top_;
    }
    void set_generator_top(long top) {
        gen_top_ = top;
        pow_.clear();
    }

    std::vector<E> multiply(const std::vector<E>& g, long a, const std::vector<E>& h, long b) {
        const auto& ta = table(a);
        const auto& tb = table(b);
        const auto& tt = table(a + b);
        std::vector<E> out(tt.exps.size(), f_.zero());
        for (size_t i = 0; i < g.size(); ++i) {
            if (f_.is_zero(g[i])) continue;
            for (size_t j = 0; j < h.size(); ++j) {
                if (f_.is_zero(h[j])) continue;
                size_t k = tt.index.at(ta.keys[i] + tb.keys[j]);
                out[k] = f_.add(out[k], f_.mul(g[i], h[j]));
            }
        }
        return out;
    }

    const Rows<F>& power(long r, long t) {
        if (r < 1) throw InputError("bad_power", "power exponent must be >= 1");
        auto key = std::make_pair(r, t);
        auto it = pow_.find(key);
        if (it != pow_.end()) return it->second;
        if (r == 1) return pow_.emplace(key, symbolic(1, t)).first->second;
        const long a1 = alpha(1);
        Rows<F> result;
        if (t >= r * a1) {
            const size_t nc = ncols(t);
            const size_t cap = symbolic_dim(r, t);
            EchelonBasis<F> eb(f_, nc);
            const long top = std::min(generator_top(), t - (r - 1) * a1);
            for (long b = a1; b <= top && eb.rank() < cap; ++b) {
                const Rows<F> gens = symbolic(1, b);
                const Rows<F> prev = power(r - 1, t - b);
                for (const auto& g : prev) {
                    for (const auto& h : gens) {
                        eb.insert(multiply(g, t - b, h, b));
                        if (eb.rank() >= cap) break;
                    }
                    if (eb.rank() >= cap) break;
                }
            }
            result = eb.reduced();
        }
        return pow_.emplace(key, std::move(result)).first->second;
    }

    ContainmentResult contains(long m, long r) {
        if (m < 1 || r < 1) throw InputError("bad_exponent", "m and r must be >= 1");
        ContainmentResult res;
        if (m < r) {
            res.contained = false;
            res.rule = "lemma";
            return res;
        }
        long from = alpha(m);
        long to = r * regularity() - 1;
        res.checked_from = from;
        res.checked_to = to;
        res.rule = "direct";  // range may be empty
        for (long t = from; t <= to; ++t) {
            const auto& pw = power(r, t);
            const size_t nc = ncols(t);
            EchelonBasis<F> eb(f_, nc);
            for (const auto& row : pw) eb.insert(row);
            for (const auto& row : symbolic(m, t)) {
                if (!eb.contains(row)) {
                    res.contained = false;
                    res.failing_degree = t;
                    for (const auto& x : row) res.witness.push_back(to_q(f_, x));
                    return res;
                }
            }
        }
        res.contained = true;
        return res;
    }

    bool power_in_symbolic(long r, long m, long t) {
        const size_t nc = ncols(t);
        EchelonBasis<F> eb(f_, nc);
        for (const auto& row : symbolic(m, t)) eb.insert(row);
        for (const auto& row : power(r, t))
            if (!eb.contains(row)) return false;
        return true;
    }

    ComponentBasis to_basis(const Rows<F>& rows, long t) const {
        ComponentBasis cb;
        cb.n = z_.n;
        cb.t = t;
        cb.field = z_.field;
        for (const auto& row : rows) {
            std::vector<Rational> q;
            for (const auto& x : row) q.push_back(to_q(f_, x));
            cb.rows.push_back(std::move(q));
        }
        return cb;
    }

private:
    F f_;
    FatPointScheme z_;
    std::vector<std::vector<E>> pts_;
    std::vector<size_t> chart_;
    std::map<long, MonoTable> tables_;
    std::map<std::pair<long, long>, Rows<F>> sym_;
    std::map<std::pair<long, long>, size_t> symdim_;
    std::map<std::pair<long, long>, Rows<F>> pow_;
    std::map<long, long> alpha_;
    std::optional<long> reg_;
    long gen_top_ = -1;
};

}  // namespace

struct FatPointIdeal::Impl {
    FatPointScheme z;
    std::variant<Engine<RationalField>, Engine<PrimeField>> engine;
    static decltype(engine) build(const FatPointScheme& z) {
        if (z.field.is_rational()) return Engine<RationalField>(RationalField{}, z);
        return Engine<PrimeField>(PrimeField(z.field.p), z);
    }
    explicit Impl(FatPointScheme s) : z(std::move(s)), engine(build(z)) {}
};

FatPointIdeal::FatPointIdeal(FatPointScheme z) : impl_(std::make_unique<Impl>(std::move(z))) {}
FatPointIdeal::~FatPointIdeal() = default;
FatPointIdeal::FatPointIdeal(FatPointIdeal&&) noexcept = default;
FatPointIdeal& FatPointIdeal::operator=(FatPointIdeal&&) noexcept = default;

const FatPointScheme& FatPointIdeal::scheme() const { return impl_->z; }

ComponentBasis FatPointIdeal::symbolic_component(long m, long t) {
    if (m < 0) throw InputError("bad_exponent", "symbolic power exponent must be >= 0");
    return std::visit([&](auto& e) { return t < 0 ? e.to_basis({}, t) : e.to_basis(e.symbolic(m, t), t); },
                      impl_->engine);
}

size_t FatPointIdeal::symbolic_dim(long m, long t) {
    return std::visit([&](auto& e) { return e.symbolic_dim(m, t); }, impl_->engine);
}

long FatPointIdeal::alpha_symbolic(long m) {
    if (m < 1) throw InputError("bad_exponent", "alpha needs m >= 1");
    return std::visit([&](auto& e) { return e.alpha(m); }, impl_->engine);
}

long FatPointIdeal::hilbert_function(long t) {
    return std::visit([&](auto& e) { return e.hilbert(t); }, impl_->engine);
}

long FatPointIdeal::regularity() {
    for (long m : impl_->z.multiplicities)
        if (m < 1) throw InputError("bad_multiplicity", "regularity needs all multiplicities >= 1");
    if (impl_->z.points.empty()) throw InputError("empty_scheme", "regularity of the empty scheme");
    return std::visit([&](auto& e) { return e.regularity(); }, impl_->engine);
}

ComponentBasis FatPointIdeal::power_component(long r, long t) {
    return std::visit([&](auto& e) { return t < 0 ? e.to_basis({}, t) : e.to_basis(e.power(r, t), t); },
                      impl_->engine);
}

size_t FatPointIdeal::power_dim(long r, long t) {
    if (t < 0) return 0;
    return std::visit([&](auto& e) { return e.power(r, t).size(); }, impl_->engine);
}

void FatPointIdeal::set_generator_top(long top) {
    std::visit([&](auto& e) { e.set_generator_top(top); }, impl_->engine);
}

long FatPointIdeal::generator_top() {
    return std::visit([&](auto& e) { return e.generator_top(); }, impl_->engine);
}

ContainmentResult FatPointIdeal::contains_symbolic_in_power(long m, long r) {
    if (impl_->z.points.empty()) throw InputError("empty_scheme", "containment for the empty scheme");
    return std::visit([&](auto& e) { return e.contains(m, r); }, impl_->engine);
}

bool FatPointIdeal::power_in_symbolic(long r, long m, long t) {
    return std::visit([&](auto& e) { return e.power_in_symbolic(r, m, t); }, impl_->engine);
}

ComponentBasis symbolic_component(const FatPointScheme& z, long m, long t) {
    return FatPointIdeal(z).symbolic_component(m, t);
}
long alpha_symbolic(const FatPointScheme& z, long m) { return FatPointIdeal(z).alpha_symbolic(m); }
long hilbert_function(const FatPointScheme& z, long t) { return FatPointIdeal(z).hilbert_function(t); }
long regularity(const FatPointScheme& z) { return FatPointIdeal(z).regularity(); }
ComponentBasis power_component(const FatPointScheme& z, long r, long t) {
    return FatPointIdeal(z).power_component(r, t);
}
ContainmentResult contains_symbolic_in_power(const FatPointScheme& z, long m, long r) {
    return FatPointIdeal(z).contains_symbolic_in_power(m, r);
}

BHResult bh_criteria(FatPointIdeal& ideal, long m, long r) {
    BHResult res;
    res.alpha_I = ideal.alpha_symbolic(1);
    res.reg_I = ideal.regularity();
    res.alpha_sym = ideal.alpha_symbolic(m);
    if (res.alpha_sym < r * res.alpha_I)
        res.verdict = BHVerdict::fails_by_alpha;
    else if (r * res.reg_I <= res.alpha_sym)
        res.verdict = BHVerdict::holds_by_reg;
    else
        res.verdict = BHVerdict::indeterminate;
    return res;
}

BHResult bh_criteria(const FatPointScheme& z, long m, long r) {
    FatPointIdeal ideal(z);
    return bh_criteria(ideal, m, r);
}

WaldschmidtEstimate waldschmidt_estimate(const FatPointScheme& z, long m_max, const GammaCertificate& cert) {
    if (!z.reduced()) throw InputError("not_reduced", "the Waldschmidt estimate needs all multiplicities 1");
    if (m_max < 1) throw InputError("bad_exponent", "m_max must be >= 1");
    FatPointIdeal ideal(z);
    WaldschmidtEstimate w;
    for (long m = 1; m <= m_max; ++m) {
        long d = ideal.alpha_symbolic(m);
        w.entries.push_back({m, d, frac(d, m)});
        if (m == 1 || frac(d, m) < w.upper) w.upper = frac(d, m);
    }
    w.lower = 1;
    w.lower_source = "alpha(I^(m)) >= m";
    Rational chud(w.entries[0].d_m, z.n);
    if (chud > w.lower) {
        w.lower = chud;
        w.lower_source = "alpha(I)/n";
    }
    if (cert.epsilon) {
        if (z.n != 2) throw InputError("not_planar", "epsilon certificates apply to planar schemes");
        Rational v = *cert.epsilon * static_cast<long>(z.size());
        if (v > w.lower) {
            w.lower = v;
            w.lower_source = "r*epsilon";
        }
    }
    if (cert.nef_class) {
        const auto& H = *cert.nef_class;
        if (z.n != 2 || H.r() != static_cast<int>(z.size()))
            throw InputError("dimension_mismatch", "nef certificate must live on the blow-up at these points");
        if (H.d() <= 0) throw InputError("bad_certificate", "nef certificate needs positive degree");
        Rational v = H.msum() / H.d();
        if (v > w.lower) {
            w.lower = v;
            w.lower_source = "nef class " + H.pretty();
        }
    }
    if (w.lower > w.upper)
        throw InconsistencyError("gamma_bounds_cross", "Waldschmidt lower bound exceeds the computed upper bound");
    return w;
}

ResurgenceBounds resurgence_bounds(long alpha, long reg, const Rational& gamma_lower, const Rational& gamma_upper) {
    if (gamma_lower <= 0 || gamma_upper < gamma_lower)
        throw InputError("bad_gamma", "need 0 < gamma_lower <= gamma_upper");
    return {Rational(alpha) / gamma_upper, Rational(reg) / gamma_lower};
}

ResurgenceBounds resurgence_bounds(const FatPointScheme& z, const WaldschmidtEstimate& gamma) {
    if (!z.reduced()) throw InputError("not_reduced", "resurgence bounds need a reduced scheme");
    FatPointIdeal ideal(z);
    return resurgence_bounds(ideal.alpha_symbolic(1), ideal.regularity(), gamma.lower, gamma.upper);
}

bool frobenius_containment_check(const FatPointScheme& z, long q) {
    if (z.field.is_rational()) throw InputError("char_zero", "the Frobenius check needs a field of positive characteristic");
    const auto p = static_cast<long>(z.field.p);
    if (q < 1) throw InputError("bad_q", "q must be a power of the characteristic");
    for (long x = q; x > 1; x /= p)
        if (x % p != 0) throw InputError("bad_q", std::to_string(q) + " is not a power of " + std::to_string(p));
    long m = q * z.n - (z.n - 1);
    return FatPointIdeal(z).contains_symbolic_in_power(m, q).contained;
}

}  // namespace blowup
