#pragma once

// Nonlinear complexities of finite sequences over F_q.
//
// N^(k)(s) is the least m such that some f in F_q[x_1..x_m] of degree <= k in
// each variable satisfies s_{i+m} = f(s_i, ..., s_{i+m-1}) for every window;
// L^(k)(s) is the same with total degree <= k. Existence of f for a given m is
// the consistency of a linear system in the monomial coefficients.
//
// Three routes decide that system:
//   * span route (default): never materialises the (k+1)^m monomial columns.
//     Over the R distinct windows the column space is built one variable at a
//     time, U_j = span{ u (.) x_j^a : u in U_{j+1}, 0 <= a <= k }, with a
//     greedy lex-ordered basis of monomials. Cost is polynomial in R.
//   * dense route: the full window x monomial matrix, reduced by Gaussian
//     elimination with columns in lex order (last variable fastest) and free
//     variables set to zero. Guarded by a monomial-count limit.
//   * brute force: enumerates every coefficient vector; test oracle only.
// The span route selects exactly the pivot columns of the dense reduction, so
// both routes return the same canonical witness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "sequence.hpp"

namespace nlcx {

enum class DegreeMode { per_variable, total };

enum class ComplexityKind { nk, lk, linear, max_order };

inline std::string to_string(ComplexityKind k) {
    switch (k) {
        case ComplexityKind::nk: return "nk";
        case ComplexityKind::lk: return "lk";
        case ComplexityKind::linear: return "lin";
        case ComplexityKind::max_order: return "moc";
    }
    return "nk";
}

inline ComplexityKind parse_complexity_kind(const std::string& s) {
    for (auto k : {ComplexityKind::nk, ComplexityKind::lk, ComplexityKind::linear, ComplexityKind::max_order})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown complexity kind '" + s + "'");
}

using Exponents = std::vector<std::uint32_t>;

struct Term {
    Exponents exps;
    Elem coeff = 0;
    bool operator==(const Term&) const = default;
};

/// f in F_q[x_1..x_m]; variable x_j is fed s_{i+j-1}.
struct FeedbackPolynomial {
    std::size_t vars = 0;
    DegreeMode mode = DegreeMode::per_variable;
    unsigned k = 1;
    std::vector<Term> terms;  // nonzero coefficients only

    bool respects_cap() const {
        for (const auto& t : terms) {
            if (t.exps.size() != vars) return false;
            std::uint64_t total = 0;
            for (auto a : t.exps) {
                if (mode == DegreeMode::per_variable && a > k) return false;
                total += a;
            }
            if (mode == DegreeMode::total && total > k) return false;
        }
        return true;
    }

    Elem evaluate(const Field& f, std::span<const Elem> point) const {
        if (point.size() != vars) throw std::invalid_argument("feedback polynomial arity mismatch");
        Elem acc = 0;
        for (const auto& t : terms) {
            Elem v = t.coeff;
            for (std::size_t j = 0; j < vars && v != 0; ++j)
                if (t.exps[j]) v = f.mul(v, f.pow(point[j], t.exps[j]));
            acc = f.add(acc, v);
        }
        return acc;
    }
};

/// True iff the recursion driven by f regenerates s_{m+1..n} from s_1..s_m.
inline bool replay(const FeedbackPolynomial& f, const Field& field, std::span<const Elem> s) {
    const std::size_t m = f.vars;
    if (m > s.size()) return false;
    for (std::size_t i = 0; i + m < s.size(); ++i)
        if (f.evaluate(field, s.subspan(i, m)) != s[i + m]) return false;
    return true;
}

struct ComplexityReport {
    ComplexityKind kind = ComplexityKind::nk;
    std::optional<unsigned> k;
    std::size_t n = 0;
    std::size_t value = 0;
    std::optional<FeedbackPolynomial> witness;
};

struct SolverOptions {
    bool witness = false;
    /// For k >= q-1 (every map is a polynomial) skip the algebra and only
    /// check that equal windows have equal successors.
    bool window_shortcut = true;
    /// Dense route only.
    std::uint64_t max_monomials = std::uint64_t{1} << 20;
};

namespace detail {

/// Incremental row echelon form over F_q. Each stored row has a unit pivot
/// and zeros at the pivots of all rows stored before it, so reducing a vector
/// by the rows in insertion order eliminates every pivot.
class Echelon {
public:
    Echelon(const Field& f, std::size_t len, bool track) : f_(f), len_(len), track_(track) {}

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t inserted() const noexcept { return inserted_; }

    /// Adds v as basis candidate number inserted(); true iff independent.
    bool insert(std::vector<Elem> v) {
        std::vector<Elem> comb;
        if (track_) {
            comb.assign(inserted_ + 1, 0);
            comb[inserted_] = 1;
        }
        ++inserted_;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Elem c = v[pivot_[r]];
            if (c == 0) continue;
            axpy(v, rows_[r], c);
            if (track_) axpy(comb, combs_[r], c);
        }
        std::size_t pv = 0;
        while (pv < len_ && v[pv] == 0) ++pv;
        if (pv == len_) return false;
        const Elem s = f_.inv(v[pv]);
        for (auto& x : v) x = f_.mul(x, s);
        if (track_) {
            for (auto& x : comb) x = f_.mul(x, s);
            combs_.push_back(std::move(comb));
        }
        rows_.push_back(std::move(v));
        pivot_.push_back(pv);
        return true;
    }

    /// Coefficients over the inserted candidates expressing target, or
    /// nullopt if target is outside the span. Needs tracking for the
    /// coefficients; without it an empty vector signals membership.
    std::optional<std::vector<Elem>> express(std::vector<Elem> target) const {
        std::vector<Elem> coeffs(track_ ? inserted_ : 0, 0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Elem c = target[pivot_[r]];
            if (c == 0) continue;
            axpy(target, rows_[r], c);
            if (track_) {
                const auto& cb = combs_[r];
                for (std::size_t t = 0; t < cb.size(); ++t)
                    if (cb[t]) coeffs[t] = f_.add(coeffs[t], f_.mul(c, cb[t]));
            }
        }
        for (Elem x : target)
            if (x != 0) return std::nullopt;
        return coeffs;
    }

private:
    // v -= c * row, over the shared prefix
    void axpy(std::vector<Elem>& v, const std::vector<Elem>& row, Elem c) const {
        const std::size_t len = std::min(v.size(), row.size());
        for (std::size_t i = 0; i < len; ++i)
            if (row[i]) v[i] = f_.sub(v[i], f_.mul(c, row[i]));
    }

    const Field& f_;
    std::size_t len_;
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<std::vector<Elem>> rows_;
    std::vector<std::size_t> pivot_;
    std::vector<std::vector<Elem>> combs_;
};

/// Distinct windows of length m and their successors; nullopt when two equal
/// windows have different successors (no feedback map of any kind exists).
struct WindowSystem {
    std::vector<std::vector<Elem>> points;
    std::vector<Elem> targets;
};

inline std::optional<WindowSystem> collect_windows(std::span<const Elem> s, std::size_t m) {
    WindowSystem sys;
    std::map<std::vector<Elem>, Elem> seen;
    for (std::size_t i = 0; i + m < s.size(); ++i) {
        std::vector<Elem> w(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + m));
        auto [it, fresh] = seen.emplace(w, s[i + m]);
        if (!fresh) {
            if (it->second != s[i + m]) return std::nullopt;
            continue;
        }
        sys.points.push_back(std::move(w));
        sys.targets.push_back(s[i + m]);
    }
    return sys;
}

inline std::uint32_t effective_degree(const Field& f, unsigned k) {
    return std::min<std::uint32_t>(k, f.q() - 1);
}

struct BasisMonomial {
    Exponents exps;
    std::vector<Elem> eval;
};

inline std::optional<FeedbackPolynomial> feasible_span(const Field& f, std::span<const Elem> s, std::size_t m,
                                                       unsigned k, DegreeMode mode, const SolverOptions& opt) {
    FeedbackPolynomial poly{m, mode, k, {}};
    if (m >= s.size()) return poly;  // no windows

    auto sys = collect_windows(s, m);
    if (!sys) return std::nullopt;
    const std::size_t R = sys->points.size();
    const std::uint32_t ke = effective_degree(f, k);

    // Every map F_q^m -> F_q is representable, so distinct windows suffice.
    const bool all_maps = mode == DegreeMode::per_variable
                              ? ke == f.q() - 1
                              : static_cast<std::uint64_t>(k) >= static_cast<std::uint64_t>(m) * (f.q() - 1);
    if (all_maps && opt.window_shortcut && !opt.witness) return poly;

    // Level d holds a basis of the image of monomials of total degree <= d
    // (total mode); per-variable mode uses the single level 0.
    const std::size_t top = mode == DegreeMode::per_variable
                                ? 0
                                : static_cast<std::size_t>(std::min<std::uint64_t>(
                                      k, static_cast<std::uint64_t>(m) * (f.q() - 1)));
    std::vector<std::vector<BasisMonomial>> basis(top + 1);
    for (auto& level : basis) level.push_back({Exponents(m, 0), std::vector<Elem>(R, 1)});

    std::vector<std::vector<Elem>> powers(ke + 1, std::vector<Elem>(R, 1));
    for (std::size_t j = m; j-- > 0;) {
        for (std::uint32_t a = 1; a <= ke; ++a)
            for (std::size_t r = 0; r < R; ++r) powers[a][r] = f.mul(powers[a - 1][r], sys->points[r][j]);

        std::vector<std::vector<BasisMonomial>> next(top + 1);
        for (std::size_t d = 0; d <= top; ++d) {
            Echelon ech(f, R, false);
            const std::uint32_t amax =
                mode == DegreeMode::per_variable ? ke : static_cast<std::uint32_t>(std::min<std::size_t>(d, ke));
            for (std::uint32_t a = 0; a <= amax && ech.rank() < R; ++a) {
                const auto& src = mode == DegreeMode::per_variable ? basis[0] : basis[d - a];
                for (const auto& b : src) {
                    BasisMonomial cand{b.exps, b.eval};
                    cand.exps[j] = a;
                    if (a)
                        for (std::size_t r = 0; r < R; ++r) cand.eval[r] = f.mul(cand.eval[r], powers[a][r]);
                    if (ech.insert(cand.eval)) next[d].push_back(std::move(cand));
                    if (ech.rank() == R) break;
                }
            }
        }
        basis = std::move(next);
        if (basis[top].size() == R) break;  // full rank: later stages add nothing
    }

    const auto& final_basis = basis[top];
    Echelon ech(f, R, opt.witness);
    for (const auto& b : final_basis) ech.insert(b.eval);
    auto coeffs = ech.express(sys->targets);
    if (!coeffs) return std::nullopt;
    if (opt.witness) {
        for (std::size_t t = 0; t < final_basis.size(); ++t)
            if ((*coeffs)[t]) poly.terms.push_back({final_basis[t].exps, (*coeffs)[t]});
        std::sort(poly.terms.begin(), poly.terms.end(), [](const Term& x, const Term& y) { return x.exps < y.exps; });
    }
    return poly;
}

/// Number of exponent vectors of length m with entries <= cap (and total
/// <= k in total mode).
inline long double monomial_count(std::size_t m, std::uint32_t cap, DegreeMode mode, unsigned k) {
    if (mode == DegreeMode::per_variable)
        return std::pow(static_cast<long double>(cap) + 1, static_cast<long double>(m));
    // ways[t] = number of vectors so far with total t
    std::vector<long double> ways(k + 1, 0);
    ways[0] = 1;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<long double> next(k + 1, 0);
        for (std::size_t t = 0; t <= k; ++t)
            for (std::uint32_t a = 0; a <= cap && t + a <= k; ++a) next[t + a] += ways[t];
        ways = std::move(next);
    }
    long double total = 0;
    for (auto w : ways) total += w;
    return total;
}

/// All exponent vectors of length m with entries <= cap (and total <= k in
/// total mode), in lexicographic order with the last variable fastest.
inline std::vector<Exponents> enumerate_monomials(std::size_t m, std::uint32_t cap, DegreeMode mode, unsigned k,
                                                  std::uint64_t limit) {
    const long double count = monomial_count(m, cap, mode, k);
    if (count > static_cast<long double>(limit)) throw GuardExceeded("max_monomials", count, limit);
    std::vector<Exponents> out;
    Exponents e(m, 0);
    for (;;) {
        std::uint64_t total = 0;
        for (auto a : e) total += a;
        if (mode == DegreeMode::per_variable || total <= k) {
            out.push_back(e);
        }
        std::size_t j = m;
        while (j > 0 && e[j - 1] == cap) e[--j] = 0;
        if (j == 0) break;
        ++e[j - 1];
    }
    return out;
}

inline Elem monomial_value(const Field& f, const Exponents& e, std::span<const Elem> point) {
    Elem v = 1;
    for (std::size_t j = 0; j < e.size() && v; ++j)
        if (e[j]) v = f.mul(v, f.pow(point[j], e[j]));
    return v;
}

inline std::optional<FeedbackPolynomial> feasible_dense(const Field& f, std::span<const Elem> s, std::size_t m,
                                                        unsigned k, DegreeMode mode, const SolverOptions& opt) {
    FeedbackPolynomial poly{m, mode, k, {}};
    if (m >= s.size()) return poly;
    const std::uint32_t ke = effective_degree(f, k);
    const auto monos = enumerate_monomials(m, ke, mode, k, opt.max_monomials);
    const std::size_t rows = s.size() - m, cols = monos.size();

    std::vector<std::vector<Elem>> a(rows, std::vector<Elem>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        auto w = s.subspan(i, m);
        for (std::size_t c = 0; c < cols; ++c) a[i][c] = monomial_value(f, monos[c], w);
        a[i][cols] = s[i + m];
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        const Elem inv = f.inv(a[r][c]);
        for (auto& x : a[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Elem factor = a[i][c];
            for (std::size_t t = c; t <= cols; ++t)
                if (a[r][t]) a[i][t] = f.sub(a[i][t], f.mul(factor, a[r][t]));
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    if (opt.witness)
        for (std::size_t i = 0; i < pivot_cols.size(); ++i)
            if (a[i][cols]) poly.terms.push_back({monos[pivot_cols[i]], a[i][cols]});
    return poly;
}

enum class Route { span, dense };

inline ComplexityReport search(const Sequence& s, unsigned k, DegreeMode mode, ComplexityKind kind,
                               const SolverOptions& opt, Route route, std::size_t start_m = 1) {
    if (k < 1) throw std::invalid_argument("degree bound k must be at least 1");
    if (s.empty()) throw std::invalid_argument("complexity of an empty sequence is undefined");
    ComplexityReport rep{kind, k, s.size(), 0, std::nullopt};
    if (s.all_zero()) {
        if (opt.witness) rep.witness = FeedbackPolynomial{0, mode, k, {}};
        return rep;
    }
    const std::span<const Elem> view(s.elems);
    for (std::size_t m = std::max<std::size_t>(start_m, 1); m <= s.size(); ++m) {
        auto w = route == Route::span ? feasible_span(*s.field, view, m, k, mode, opt)
                                      : feasible_dense(*s.field, view, m, k, mode, opt);
        if (w) {
            rep.value = m;
            if (opt.witness) rep.witness = std::move(w);
            return rep;
        }
    }
    throw std::logic_error("complexity search exhausted");  // m = n always succeeds
}

}  // namespace detail

/// N^(k)(s): per-variable degree <= k.
inline ComplexityReport nonlinear_complexity(const Sequence& s, unsigned k, const SolverOptions& opt = {}) {
    return detail::search(s, k, DegreeMode::per_variable, ComplexityKind::nk, opt, detail::Route::span);
}

/// L^(k)(s): total degree <= k.
inline ComplexityReport total_degree_complexity(const Sequence& s, unsigned k, const SolverOptions& opt = {}) {
    return detail::search(s, k, DegreeMode::total, ComplexityKind::lk, opt, detail::Route::span);
}

/// Same contract through the dense matrix route (guarded by max_monomials).
inline ComplexityReport dense_complexity(const Sequence& s, unsigned k, DegreeMode mode, const SolverOptions& opt = {}) {
    return detail::search(s, k, mode, mode == DegreeMode::per_variable ? ComplexityKind::nk : ComplexityKind::lk, opt,
                          detail::Route::dense);
}

/// M(s) = N^(q-1)(s).
inline ComplexityReport max_order_complexity(const Sequence& s, const SolverOptions& opt = {}) {
    auto rep = detail::search(s, s.field->q() - 1, DegreeMode::per_variable, ComplexityKind::max_order, opt,
                              detail::Route::span);
    return rep;
}

/// Linear complexity by Berlekamp-Massey. A sequence (0,...,0,x), x != 0, of
/// length n has linear complexity n. The witness is the homogeneous linear
/// feedback s_{i+L} = sum_j w_j s_{i+j-1}.
inline ComplexityReport linear_complexity(const Sequence& s, bool want_witness = false) {
    if (s.empty()) throw std::invalid_argument("complexity of an empty sequence is undefined");
    const Field& f = *s.field;
    std::vector<Elem> C{1}, B{1};
    std::size_t L = 0, shift = 1;
    Elem b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Elem d = s[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) d = f.add(d, f.mul(C[i], s[n - i]));
        if (d == 0) {
            ++shift;
            continue;
        }
        const Elem coef = f.div(d, b);
        std::vector<Elem> T = C;
        if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
        for (std::size_t i = 0; i < B.size(); ++i) C[i + shift] = f.sub(C[i + shift], f.mul(coef, B[i]));
        if (2 * L <= n) {
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    ComplexityReport rep{ComplexityKind::linear, std::nullopt, s.size(), L, std::nullopt};
    if (want_witness) {
        FeedbackPolynomial w{L, DegreeMode::total, 1, {}};
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) {
            if (C[i] == 0) continue;
            Exponents e(L, 0);
            e[L - i] = 1;
            w.terms.push_back({e, f.neg(C[i])});
        }
        std::sort(w.terms.begin(), w.terms.end(), [](const Term& x, const Term& y) { return x.exps < y.exps; });
        rep.witness = std::move(w);
    }
    return rep;
}

/// Complexity of every initial segment s_1..s_n, n = 1..|s|. Uses that the
/// profile is nondecreasing to start each search at the previous value.
inline std::vector<std::size_t> profile(const Sequence& s, unsigned k, ComplexityKind kind,
                                        const SolverOptions& opt = {}) {
    if (s.empty()) throw std::invalid_argument("profile of an empty sequence is undefined");
    std::vector<std::size_t> out;
    out.reserve(s.size());
    SolverOptions o = opt;
    o.witness = false;
    std::size_t prev = 0;
    for (std::size_t n = 1; n <= s.size(); ++n) {
        const Sequence seg = s.prefix(n);
        std::size_t v = 0;
        switch (kind) {
            case ComplexityKind::linear: v = linear_complexity(seg).value; break;
            case ComplexityKind::nk:
                v = detail::search(seg, k, DegreeMode::per_variable, kind, o, detail::Route::span, prev).value;
                break;
            case ComplexityKind::lk:
                v = detail::search(seg, k, DegreeMode::total, kind, o, detail::Route::span, prev).value;
                break;
            case ComplexityKind::max_order:
                v = detail::search(seg, seg.field->q() - 1, DegreeMode::per_variable, kind, o, detail::Route::span,
                                   prev)
                        .value;
                break;
        }
        out.push_back(v);
        prev = v;
    }
    return out;
}

/// Independent oracle: tries every feedback polynomial (all q^{#monomials}
/// coefficient vectors) for m = 1, 2, ... For n >= 2, m = n-1 is accepted
/// without enumeration since the constant polynomial s_n always works there.
/// Throws GuardExceeded when q^{#monomials} > max_polynomials for some m
/// that has to be enumerated.
inline std::size_t brute_force_complexity(const Sequence& s, unsigned k, ComplexityKind kind,
                                          std::uint64_t max_polynomials = std::uint64_t{1} << 24) {
    if (k < 1) throw std::invalid_argument("degree bound k must be at least 1");
    if (kind != ComplexityKind::nk && kind != ComplexityKind::lk)
        throw std::invalid_argument("brute force oracle supports nk and lk only");
    if (s.empty()) throw std::invalid_argument("complexity of an empty sequence is undefined");
    if (s.all_zero()) return 0;
    const Field& f = *s.field;
    const std::size_t n = s.size();
    if (n == 1) return 1;
    const DegreeMode mode = kind == ComplexityKind::nk ? DegreeMode::per_variable : DegreeMode::total;
    const std::uint32_t cap = std::min<std::uint32_t>(k, f.q() - 1);

    for (std::size_t m = 1; m < n - 1; ++m) {
        const long double space =
            std::pow(static_cast<long double>(f.q()), detail::monomial_count(m, cap, mode, k));
        if (space > static_cast<long double>(max_polynomials)) throw GuardExceeded("max_polynomials", space, max_polynomials);
        const auto monos = detail::enumerate_monomials(m, cap, mode, k, max_polynomials);

        const std::size_t rows = n - m;
        std::vector<std::vector<Elem>> vals(rows, std::vector<Elem>(monos.size()));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t c = 0; c < monos.size(); ++c)
                vals[i][c] = detail::monomial_value(f, monos[c], std::span<const Elem>(s.elems).subspan(i, m));

        std::vector<Elem> coeff(monos.size(), 0);
        const auto total = static_cast<std::uint64_t>(space);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (auto& x : coeff) {
                x = static_cast<Elem>(c % f.q());
                c /= f.q();
            }
            bool ok = true;
            for (std::size_t i = 0; i < rows && ok; ++i) {
                Elem acc = 0;
                for (std::size_t t = 0; t < coeff.size(); ++t)
                    if (coeff[t]) acc = f.add(acc, f.mul(coeff[t], vals[i][t]));
                ok = acc == s[i + m];
            }
            if (ok) return m;
        }
    }
    return n - 1;
}

/// Dispatch by kind; k is ignored for linear and max-order.
inline ComplexityReport complexity(const Sequence& s, ComplexityKind kind, unsigned k, const SolverOptions& opt = {}) {
    switch (kind) {
        case ComplexityKind::nk: return nonlinear_complexity(s, k, opt);
        case ComplexityKind::lk: return total_degree_complexity(s, k, opt);
        case ComplexityKind::linear: return linear_complexity(s, opt.witness);
        case ComplexityKind::max_order: return max_order_complexity(s, opt);
    }
    throw std::invalid_argument("unknown complexity kind");
}

}  // namespace nlcx
