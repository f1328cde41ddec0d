#pragma once

// Counting and sampling experiments on N^(k) of random sequences:
//   * T_n^(k)(m), the number of length-n sequences with N^(k) <= m, by
//     exhaustive enumeration, against the bound q^{(k+1)^m + m};
//   * Monte Carlo profiles of N_n^(k) over a grid of lengths, compared with
//     log n / log(k+1).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "complexity.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "generators.hpp"
#include "parallel.hpp"

namespace nlcx {

using BigInt = boost::multiprecision::cpp_int;

struct CountResult {
    std::uint64_t q = 0;
    unsigned k = 0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t count = 0;
    BigInt bound_exponent;         // (k+1)^m + m
    std::optional<BigInt> bound;   // q^bound_exponent, when small enough to materialise
    bool pass = false;

    std::string bound_str() const {
        if (bound) return bound->str();
        return std::to_string(q) + "^" + bound_exponent.str();
    }
};

struct CountOptions {
    std::uint64_t max_sequences = std::uint64_t{1} << 22;
    unsigned threads = 1;
};

/// hist[v] = number of length-n sequences over F_q with N^(k) = v. Sequence
/// number c has s_i = (c / q^{i-1}) mod q (s_1 least significant).
inline std::vector<std::uint64_t> complexity_histogram(const FieldPtr& field, unsigned k, std::uint64_t n,
                                                       const CountOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const long double total_ld = std::pow(static_cast<long double>(field->q()), static_cast<long double>(n));
    if (total_ld > static_cast<long double>(opt.max_sequences))
        throw GuardExceeded("max_sequences", total_ld, static_cast<long double>(opt.max_sequences));
    const auto total = static_cast<std::uint64_t>(total_ld);
    const std::uint32_t q = field->q();

    const std::size_t shards = std::max<std::size_t>(1, std::min<std::uint64_t>(total, 64));
    std::vector<std::vector<std::uint64_t>> partial(shards, std::vector<std::uint64_t>(n + 1, 0));
    parallel_for(shards, opt.threads, [&](std::size_t sh) {
        const std::uint64_t lo = total * sh / shards, hi = total * (sh + 1) / shards;
        Sequence s{field, std::vector<Elem>(n, 0), {}};
        for (std::uint64_t code = lo; code < hi; ++code) {
            std::uint64_t c = code;
            for (auto& x : s.elems) {
                x = static_cast<Elem>(c % q);
                c /= q;
            }
            ++partial[sh][nonlinear_complexity(s, k).value];
        }
    });
    std::vector<std::uint64_t> hist(n + 1, 0);
    for (const auto& p : partial)
        for (std::size_t v = 0; v <= n; ++v) hist[v] += p[v];
    return hist;
}

/// Exponent (k+1)^m + m of the counting bound.
inline BigInt counting_bound_exponent(unsigned k, std::uint64_t m) {
    BigInt e = boost::multiprecision::pow(BigInt(k) + 1, static_cast<unsigned>(m));
    return e + m;
}

inline CountResult make_count_result(std::uint64_t q, unsigned k, std::uint64_t n, std::uint64_t m,
                                     std::uint64_t count) {
    CountResult r{q, k, n, m, count, counting_bound_exponent(k, m), std::nullopt, false};
    // q^E with E >= n already exceeds every possible count
    const long double bits = static_cast<long double>(r.bound_exponent) * std::log2(static_cast<long double>(q));
    if (bits <= 4096) {
        r.bound = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(r.bound_exponent));
        r.pass = BigInt(count) <= *r.bound;
    } else {
        r.pass = r.bound_exponent >= n;
    }
    return r;
}

inline std::vector<CountResult> exhaustive_counts(const FieldPtr& field, unsigned k, std::uint64_t n,
                                                  const std::vector<std::uint64_t>& ms, const CountOptions& opt = {}) {
    for (auto m : ms)
        if (m + 1 > n) throw std::invalid_argument("m must not exceed n-1");
    const auto hist = complexity_histogram(field, k, n, opt);
    std::vector<CountResult> out;
    for (auto m : ms) {
        const std::uint64_t count = std::accumulate(hist.begin(), hist.begin() + static_cast<std::ptrdiff_t>(m + 1),
                                                    std::uint64_t{0});
        out.push_back(make_count_result(field->q(), k, n, m, count));
    }
    return out;
}

/// T_n^(k)(m) against q^{(k+1)^m + m}.
inline CountResult exhaustive_count(std::uint64_t q, unsigned k, std::uint64_t n, std::uint64_t m,
                                    const CountOptions& opt = {}) {
    return exhaustive_counts(make_field_of_order(q), k, n, {m}, opt).front();
}

struct GridPoint {
    std::uint64_t n = 0;
    double mean = 0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    std::uint64_t p05 = 0;
    std::uint64_t p50 = 0;
    std::uint64_t p95 = 0;
    double ref = 0;                 // log n / log(k+1)
    double frac_below_ref_minus_1 = 0;
    std::vector<std::uint64_t> values;  // sorted, one per sample

    /// Fraction of samples with N_n^(k) < threshold.
    double fraction_below(double threshold) const {
        const auto it = std::lower_bound(values.begin(), values.end(), threshold,
                                         [](std::uint64_t v, double t) { return static_cast<double>(v) < t; });
        return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
    }
};

struct ProfileStats {
    std::uint64_t q = 0;
    unsigned k = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<GridPoint> grid;
};

struct MonteCarloOptions {
    unsigned threads = 1;
    std::uint64_t max_length = 4096;
    std::optional<Elem> primitive;
};

inline double reference_curve(std::uint64_t n, unsigned k) {
    return std::log(static_cast<double>(n)) / std::log(static_cast<double>(k) + 1.0);
}

/// Nearest-rank percentile of a sorted sample.
inline std::uint64_t percentile(const std::vector<std::uint64_t>& sorted, double pct) {
    if (sorted.empty()) throw std::invalid_argument("percentile of an empty sample");
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

/// Sample i uses random_sequence(field, max(grid), seed ^ i), so results do not
/// depend on the thread count.
inline ProfileStats monte_carlo_profile(std::uint64_t q, unsigned k, std::vector<std::uint64_t> grid,
                                        std::uint64_t samples, std::uint64_t seed,
                                        const MonteCarloOptions& opt = {}) {
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (grid.empty()) throw std::invalid_argument("empty length grid");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 1) throw std::invalid_argument("grid lengths must be positive");
    const std::uint64_t nmax = grid.back();
    if (nmax > opt.max_length)
        throw GuardExceeded("max_length", static_cast<long double>(nmax), static_cast<long double>(opt.max_length));

    const auto field = make_field_of_order(q, opt.primitive);
    std::vector<std::vector<std::uint64_t>> values(samples, std::vector<std::uint64_t>(grid.size()));
    parallel_for(samples, opt.threads, [&](std::size_t i) {
        const auto s = random_sequence(field, nmax, sample_seed(seed, i));
        std::size_t prev = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto seg = s.prefix(grid[g]);
            prev = detail::search(seg, k, DegreeMode::per_variable, ComplexityKind::nk, {}, detail::Route::span, prev)
                       .value;
            values[i][g] = prev;
        }
    });

    ProfileStats st{q, k, samples, seed, {}};
    for (std::size_t g = 0; g < grid.size(); ++g) {
        GridPoint pt;
        pt.n = grid[g];
        for (std::size_t i = 0; i < samples; ++i) pt.values.push_back(values[i][g]);
        std::sort(pt.values.begin(), pt.values.end());
        pt.min = pt.values.front();
        pt.max = pt.values.back();
        pt.mean = static_cast<double>(std::accumulate(pt.values.begin(), pt.values.end(), std::uint64_t{0})) /
                  static_cast<double>(samples);
        pt.p05 = percentile(pt.values, 5);
        pt.p50 = percentile(pt.values, 50);
        pt.p95 = percentile(pt.values, 95);
        pt.ref = reference_curve(pt.n, k);
        pt.frac_below_ref_minus_1 = pt.fraction_below(pt.ref - 1);
        st.grid.push_back(std::move(pt));
    }
    return st;
}

/// Least-squares slope of the mean profile against ln n: an empirical
/// estimate of the growth constant C_{q,k}. Exploratory only.
inline double empirical_constant(const std::vector<std::uint64_t>& ns, const std::vector<double>& means) {
    if (ns.size() != means.size()) throw std::invalid_argument("grid and means differ in length");
    if (ns.size() < 3) throw std::invalid_argument("need at least 3 grid points");
    std::vector<double> xs;
    for (auto n : ns) xs.push_back(std::log(static_cast<double>(n)));
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (means[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("degenerate grid: all lengths equal");
    return sxy / sxx;
}

inline double empirical_constant(const ProfileStats& st) {
    std::vector<std::uint64_t> ns;
    std::vector<double> means;
    for (const auto& g : st.grid) {
        ns.push_back(g.n);
        means.push_back(g.mean);
    }
    return empirical_constant(ns, means);
}

}  // namespace nlcx
