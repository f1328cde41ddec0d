#pragma once

// Closed-form lower bounds on the complexity of the inversive, periodic
// inversive and Hermitian sequences, and the sweep that checks computed
// complexities against them. All bounds are exact rationals.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "complexity.hpp"
#include "generators.hpp"
#include "hermitian.hpp"
#include "parallel.hpp"

namespace nlcx {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t to_i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

/// (n-1)/(k+1), for 1 <= n <= q-2.
inline Rational bound_inversive(std::uint64_t n, unsigned k, std::optional<std::uint64_t> q = std::nullopt) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (q && n + 2 > *q) throw std::invalid_argument("n must not exceed q-2");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    return Rational(to_i64(n) - 1, to_i64(k) + 1);
}

/// min{(n-1)/(k+1), (d-1)/k}.
inline Rational bound_periodic(std::uint64_t n, unsigned k, std::uint64_t d) {
    if (n < 1 || k < 1 || d < 1) throw std::invalid_argument("bound_periodic needs n, k, d >= 1");
    return std::min(Rational(to_i64(n) - 1, to_i64(k) + 1), Rational(to_i64(d) - 1, to_i64(k)));
}

namespace detail {

inline std::uint64_t hermitian_r(std::uint64_t n, std::uint32_t ell) {
    const std::uint64_t q = static_cast<std::uint64_t>(ell) * ell;
    if (n < 1 || n > (q - 1) * (ell - 1)) throw std::invalid_argument("n must lie in [1, (q-1)(l-1)]");
    return n / (q - 1);
}

}  // namespace detail

/// ((q-1) r - 1) / (l(l-1)k + r), r = floor(n/(q-1)); 0 when n < q-1.
inline Rational bound_hermitian_N(std::uint64_t n, unsigned k, std::uint32_t ell) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const std::uint64_t r = detail::hermitian_r(n, ell);
    if (r == 0) return Rational(0);
    const std::int64_t q = to_i64(static_cast<std::uint64_t>(ell) * ell);
    return Rational((q - 1) * to_i64(r) - 1, to_i64(ell) * (to_i64(ell) - 1) * k + to_i64(r));
}

/// ((q-1) r - (l^2-l-1)k - 1) / (k + r); may be negative.
inline Rational bound_hermitian_L(std::uint64_t n, unsigned k, std::uint32_t ell) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const std::uint64_t r = detail::hermitian_r(n, ell);
    const std::int64_t l = ell, q = l * l;
    return Rational((q - 1) * to_i64(r) - (l * l - l - 1) * k - 1, to_i64(k) + to_i64(r));
}

enum class TheoremId { T3_1, C3_2, L_remark, T3_3, C3_4, T4_2, T4_3 };

inline std::string to_string(TheoremId t) {
    switch (t) {
        case TheoremId::T3_1: return "T3.1";
        case TheoremId::C3_2: return "C3.2";
        case TheoremId::L_remark: return "L-remark";
        case TheoremId::T3_3: return "T3.3";
        case TheoremId::C3_4: return "C3.4";
        case TheoremId::T4_2: return "T4.2";
        case TheoremId::T4_3: return "T4.3";
    }
    return "?";
}

struct BoundCheck {
    TheoremId theorem{};
    std::uint64_t q = 0;
    unsigned k = 0;  // 0 for the linear-complexity remark
    std::uint64_t n = 0;
    std::uint64_t d_or_ell = 0;
    Rational bound;
    std::uint64_t computed = 0;
    bool pass = false;
    bool trivial = false;  // bound <= 0
};

inline BoundCheck make_check(TheoremId id, std::uint64_t q, unsigned k, std::uint64_t n, std::uint64_t extra,
                             Rational bound, std::uint64_t computed) {
    BoundCheck c{id, q, k, n, extra, bound, computed, false, bound <= 0};
    c.pass = c.trivial || Rational(to_i64(computed)) >= bound;
    return c;
}

enum class ConstructionKind { inversive, periodic, hermitian, random };

inline ConstructionKind parse_construction(const std::string& s) {
    if (s == "inversive") return ConstructionKind::inversive;
    if (s == "periodic") return ConstructionKind::periodic;
    if (s == "hermitian") return ConstructionKind::hermitian;
    if (s == "random") return ConstructionKind::random;
    throw std::invalid_argument("unknown construction '" + s + "'");
}

inline std::string to_string(ConstructionKind k) {
    switch (k) {
        case ConstructionKind::inversive: return "inversive";
        case ConstructionKind::periodic: return "periodic";
        case ConstructionKind::hermitian: return "hermitian";
        case ConstructionKind::random: return "random";
    }
    return "?";
}

struct Construction {
    ConstructionKind kind = ConstructionKind::inversive;
    std::uint64_t q = 0;          // inversive, periodic
    std::uint32_t ell = 0;        // hermitian
    std::optional<Elem> primitive;
    Elem a = 1;                   // inversive
    std::optional<std::uint64_t> d;  // periodic; absent = every admissible d
    Elem b = 1;
    std::optional<Elem> c;        // periodic; absent = smallest admissible
    std::uint64_t period_multiple = 3;  // periodic: n runs up to this multiple of d
};

struct VerifyRequest {
    Construction construction;
    unsigned kmin = 1;
    unsigned kmax = 1;
    bool nk = true;
    bool lk = true;
    bool linear = true;
    unsigned threads = 1;
};

/// Proper divisors d of q-1 (d < q-1).
inline std::vector<std::uint64_t> admissible_periods(std::uint64_t q) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d < q - 1; ++d)
        if ((q - 1) % d == 0) out.push_back(d);
    return out;
}

namespace detail {

struct SweepTask {
    Sequence seq;
    ComplexityKind kind;
    unsigned k;
    std::uint64_t extra;  // d or ell
};

inline std::vector<BoundCheck> run_task(const SweepTask& t, ConstructionKind ck) {
    const auto prof = profile(t.seq, t.k == 0 ? 1 : t.k, t.kind);
    const std::uint64_t q = t.seq.field->q();
    std::vector<BoundCheck> out;
    for (std::uint64_t n = 1; n <= prof.size(); ++n) {
        const std::uint64_t v = prof[n - 1];
        switch (ck) {
            case ConstructionKind::inversive:
                if (t.kind == ComplexityKind::linear)
                    out.push_back(make_check(TheoremId::L_remark, q, 0, n, 0, bound_inversive(n, 1), v));
                else
                    out.push_back(make_check(t.kind == ComplexityKind::nk ? TheoremId::T3_1 : TheoremId::C3_2, q, t.k, n,
                                             0, bound_inversive(n, t.k), v));
                break;
            case ConstructionKind::periodic:
                out.push_back(make_check(t.kind == ComplexityKind::nk ? TheoremId::T3_3 : TheoremId::C3_4, q, t.k, n,
                                         t.extra, bound_periodic(n, t.k, t.extra), v));
                break;
            case ConstructionKind::hermitian: {
                const auto ell = static_cast<std::uint32_t>(t.extra);
                if (t.kind == ComplexityKind::nk)
                    out.push_back(make_check(TheoremId::T4_2, q, t.k, n, ell, bound_hermitian_N(n, t.k, ell), v));
                else
                    out.push_back(make_check(TheoremId::T4_3, q, t.k, n, ell, bound_hermitian_L(n, t.k, ell), v));
                break;
            }
            case ConstructionKind::random: break;
        }
    }
    return out;
}

}  // namespace detail

/// Generates the construction, computes complexity profiles and compares
/// every initial segment with the matching theorem. Output order is fixed
/// (sequence, kind, k, n) regardless of the thread count.
inline std::vector<BoundCheck> verify(const VerifyRequest& req) {
    const Construction& c = req.construction;
    if (req.kmin < 1 || req.kmax < req.kmin) throw std::invalid_argument("need 1 <= kmin <= kmax");
    std::vector<detail::SweepTask> tasks;
    auto add_kinds = [&](const Sequence& s, std::uint64_t extra, bool with_linear) {
        for (unsigned k = req.kmin; k <= req.kmax; ++k) {
            if (req.nk) tasks.push_back({s, ComplexityKind::nk, k, extra});
            if (req.lk) tasks.push_back({s, ComplexityKind::lk, k, extra});
        }
        if (with_linear && req.linear) tasks.push_back({s, ComplexityKind::linear, 0, extra});
    };

    switch (c.kind) {
        case ConstructionKind::inversive: {
            auto field = make_field_of_order(c.q, c.primitive);
            if (req.kmax > field->q() - 1) throw std::invalid_argument("k must not exceed q-1 for this theorem");
            add_kinds(inversive_finite(field, c.a), 0, true);
            break;
        }
        case ConstructionKind::periodic: {
            auto field = make_field_of_order(c.q, c.primitive);
            if (req.kmax > field->q() - 1) throw std::invalid_argument("k must not exceed q-1 for this theorem");
            if (req.linear && !req.nk && !req.lk)
                throw std::invalid_argument("no bound for the linear complexity of the periodic construction");
            std::vector<std::uint64_t> ds = c.d ? std::vector<std::uint64_t>{*c.d} : admissible_periods(field->q());
            for (auto d : ds) {
                const Elem cc = c.c ? *c.c : default_periodic_c(*field, d, c.b);
                add_kinds(inversive_periodic(field, d, c.b, cc, c.period_multiple * d), d, false);
            }
            break;
        }
        case ConstructionKind::hermitian: {
            HermitianCurve curve(c.ell, c.primitive);
            if (req.nk && req.kmax > curve.q() - 1) throw std::invalid_argument("k must not exceed q-1 for this theorem");
            if (req.linear && !req.nk && !req.lk)
                throw std::invalid_argument("no bound for the linear complexity of the Hermitian construction");
            add_kinds(hermitian_sequence(curve), c.ell, false);
            break;
        }
        case ConstructionKind::random:
            throw std::invalid_argument("random sequences are not covered by any lower-bound theorem");
    }

    std::vector<std::vector<BoundCheck>> results(tasks.size());
    parallel_for(tasks.size(), req.threads, [&](std::size_t i) { results[i] = detail::run_task(tasks[i], c.kind); });
    std::vector<BoundCheck> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

inline bool all_pass(const std::vector<BoundCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace nlcx
