// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <nlcx/bounds.hpp>
#include <nlcx/complexity.hpp>
#include <nlcx/generators.hpp>
#include <nlcx/hermitian.hpp>
#include <nlcx/stats.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

using namespace nlcx;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Counts failed checks of a verify() sweep restricted to one kind.
std::size_t failures(const std::vector<BoundCheck>& cs, std::size_t& total) {
    std::size_t bad = 0;
    for (const auto& c : cs) bad += !c.pass;
    total += cs.size();
    return bad;
}

VerifyRequest request(ConstructionKind kind, unsigned kmax, bool nk, bool lk, bool lin) {
    VerifyRequest r;
    r.construction.kind = kind;
    r.kmin = 1;
    r.kmax = kmax;
    r.nk = nk;
    r.lk = lk;
    r.linear = lin;
    return r;
}

Outcome inversive_sweep(bool total_degree) {
    std::size_t bad = 0, total = 0;
    for (std::uint64_t q : {5u, 7u, 8u, 9u, 11u, 13u}) {
        auto r = request(ConstructionKind::inversive, 3, !total_degree, total_degree, total_degree);
        r.construction.q = q;
        bad += failures(verify(r), total);
    }
    std::ostringstream os;
    os << total << " checks, " << bad << " failures";
    return {bad == 0 && total > 0, os.str()};
}

Outcome periodic_sweep() {
    std::size_t bad = 0, total = 0, seqs = 0;
    for (std::uint64_t q : {7u, 9u, 13u}) {
        auto r = request(ConstructionKind::periodic, 2, true, true, false);
        r.construction.q = q;
        r.construction.period_multiple = 3;
        seqs += admissible_periods(q).size();
        bad += failures(verify(r), total);
    }
    std::ostringstream os;
    os << seqs << " sequences, " << total << " checks, " << bad << " failures";
    return {bad == 0 && total > 0, os.str()};
}

Outcome hermitian_sweep(bool total_degree) {
    std::size_t bad = 0, total = 0, nontrivial = 0;
    for (std::uint32_t ell : {2u, 3u, 4u}) {
        auto r = request(ConstructionKind::hermitian, 2, !total_degree, total_degree, false);
        r.construction.ell = ell;
        const auto cs = verify(r);
        for (const auto& c : cs) nontrivial += !c.trivial;
        bad += failures(cs, total);
    }
    std::ostringstream os;
    os << total << " checks (" << nontrivial << " with positive bound), " << bad << " failures";
    return {bad == 0 && total > 0, os.str()};
}

Outcome oracle_equivalence() {
    std::size_t bad = 0, total = 0;
    auto sweep = [&](std::uint64_t q, std::size_t nmax) {
        auto f = make_field_of_order(q);
        for (std::size_t n = 1; n <= nmax; ++n) {
            const auto count = static_cast<std::uint64_t>(std::pow(q, n));
            for (std::uint64_t code = 0; code < count; ++code) {
                const auto v = oracle::decode(code, n, q);
                const auto s = make_sequence(f, v);
                const auto solver = nonlinear_complexity(s, 1).value;
                const auto brute = brute_force_complexity(s, 1, ComplexityKind::nk);
                const auto independent = oracle::brute_complexity(*f, v, 1, false);
                bad += solver != brute || solver != independent;
                ++total;
            }
        }
    };
    sweep(2, 6);
    sweep(3, 4);
    std::ostringstream os;
    os << total << " sequences, " << bad << " mismatches";
    return {bad == 0, os.str()};
}

Outcome counting_bound() {
    std::size_t bad = 0, total = 0;
    auto f = make_field_of_order(2);
    for (std::uint64_t n = 3; n <= 12; ++n) {
        std::vector<std::uint64_t> ms;
        for (std::uint64_t m = 1; m <= 3 && m < n; ++m) ms.push_back(m);
        for (const auto& r : exhaustive_counts(f, 1, n, ms)) {
            const BigInt limit = BigInt(1) << static_cast<unsigned>((1u << r.m) + r.m);
            bad += !(r.pass && BigInt(r.count) <= limit);
            ++total;
        }
    }
    const auto spot = exhaustive_count(2, 1, 3, 1);
    const bool spot_ok = spot.count == 6 && spot.bound == BigInt(8) && spot.pass;
    std::ostringstream os;
    os << total << " counts, " << bad << " over the bound; T_3(1)=" << spot.count << " <= " << spot.bound_str();
    return {bad == 0 && spot_ok, os.str()};
}

Outcome hermitian_geometry() {
    std::size_t bad = 0;
    std::ostringstream os;
    for (std::uint32_t l : {2u, 3u, 4u, 5u}) {
        HermitianCurve c(l);
        bad += c.points().size() != static_cast<std::size_t>(l) * l * l + 1;
        const auto tab = orbit_decomposition(c);
        bad += tab.orbits.size() != l;
        for (const auto& o : tab.orbits) bad += o.size() != c.q() - 1;
        const auto h = construct_h(c, tab.Q());
        bad += valuation_at_infinity(c, h) != -(2 * static_cast<std::int64_t>(c.genus()) - 1);
    }
    std::size_t identity_checks = 0, series_checks = 0;
    for (std::uint32_t l : {2u, 3u}) {
        HermitianCurve c(l);
        const Field& f = *c.field();
        const auto pts = c.points();
        for (const auto& Q : pts) {
            if (Q.infinity || Q.x == 0) continue;
            const auto h = construct_h(c, Q);
            for (std::int64_t t = 0; t < c.q() - 1; ++t) {
                const auto ht = apply_automorphism_to_h(c, h, t);
                for (const auto& P : pts) {
                    if (P.infinity || P == Q) continue;
                    bad += eval_h(c, ht, c.phi(P, t)) != eval_h(c, h, P);
                    ++identity_checks;
                }
            }
            for (Elem bi : h.cofactor_roots) {
                Elem expect = oracle::branch_coefficients(c, Q.x, bi).first;
                bad += expect != f.pow(Q.x, l);
                for (Elem bj : h.cofactor_roots)
                    if (bj != bi) expect = f.mul(expect, f.sub(bi, bj));
                bad += eval_h(c, h, CurvePoint::affine(Q.x, bi)) != expect;
                ++series_checks;
            }
        }
    }
    os << identity_checks << " automorphism identities, " << series_checks << " removable points, " << bad
       << " failures";
    return {bad == 0, os.str()};
}

// Returns the number of violated invariants for one sequence.
std::size_t invariant_violations(const Sequence& s) {
    const std::uint64_t q = s.field->q();
    const std::size_t n = s.size();
    std::size_t bad = 0;
    std::vector<std::size_t> nk, lk;
    for (unsigned k = 1; k <= q + 1; ++k) {
        nk.push_back(nonlinear_complexity(s, k).value);
        lk.push_back(total_degree_complexity(s, k).value);
    }
    const std::size_t lin = linear_complexity(s).value;
    const std::size_t moc = max_order_complexity(s).value;
    const std::size_t cap = n == 1 ? 1 : n - 1;
    for (std::size_t i = 0; i < nk.size(); ++i) {
        bad += nk[i] > cap || lk[i] > cap;
        bad += (nk[i] == 0) != s.all_zero();
        bad += lk[i] < nk[i];
        if (i) bad += nk[i] > nk[i - 1] || lk[i] > lk[i - 1];
        if (i + 1 >= q - 1) bad += nk[i] != moc;
    }
    bad += lin < lk[0] || lk[0] + 1 < lin;
    for (Elem c = 2; c < q; ++c) {
        Sequence t = s;
        for (auto& x : t.elems) x = s.field->mul(c, x);
        bad += nonlinear_complexity(t, 1).value != nk[0] || total_degree_complexity(t, 1).value != lk[0];
    }
    for (auto kind : {ComplexityKind::nk, ComplexityKind::lk}) {
        const auto p = profile(s, 1, kind);
        for (std::size_t i = 1; i < p.size(); ++i) bad += p[i - 1] > p[i];
    }
    return bad;
}

Outcome invariant_suite() {
    std::size_t bad = 0, total = 0;
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
        auto f = make_field_of_order(q);
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const std::size_t n = 1 + (i * 7) % 16;
            bad += invariant_violations(random_sequence(f, n, 1000 * q + i));
            ++total;
        }
    }
    auto f2 = make_field_of_order(2);
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
            bad += invariant_violations(make_sequence(f2, oracle::decode(code, n, 2)));
            ++total;
        }
    std::ostringstream os;
    os << total << " sequences, " << bad << " violations";
    return {bad == 0, os.str()};
}

Outcome statistical_smoke() {
    const auto st = monte_carlo_profile(2, 1, {16, 32, 64, 128}, 500, 2024);
    bool ok = true;
    std::ostringstream os;
    os << std::fixed;
    os.precision(3);
    // the window-collision oracle recomputes every sample independently
    auto f = make_field_of_order(2);
    std::vector<double> oracle_mean(st.grid.size(), 0.0);
    for (std::uint64_t i = 0; i < st.samples; ++i) {
        const auto s = random_sequence(f, st.grid.back().n, sample_seed(st.seed, i));
        for (std::size_t g = 0; g < st.grid.size(); ++g)
            oracle_mean[g] += static_cast<double>(oracle::window_complexity(s.prefix(st.grid[g].n).elems)) /
                              static_cast<double>(st.samples);
    }
    for (std::size_t gi = 0; gi < st.grid.size(); ++gi) {
        const auto& g = st.grid[gi];
        const double lg = std::log2(static_cast<double>(g.n));
        const double frac = g.fraction_below(lg - 2);
        const bool frac_ok = frac < 0.10;
        const bool mean_ok = std::abs(g.mean - lg) <= 3.0;
        ok = ok && frac_ok && mean_ok;
        os << " n=" << g.n << " frac(N<log2n-2)=" << frac << (frac_ok ? "" : "!") << " mean=" << g.mean
           << " (oracle " << oracle_mean[gi] << ") log2n=" << lg << (mean_ok ? "" : "!");
    }
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"inversive N^(k) >= (n-1)/(k+1)", [] { return inversive_sweep(false); }},
        {"inversive L^(k) and linear complexity bounds", [] { return inversive_sweep(true); }},
        {"periodic inversive N^(k), L^(k) >= min{(n-1)/(k+1), (d-1)/k}", periodic_sweep},
        {"hermitian N^(k) bound", [] { return hermitian_sweep(false); }},
        {"hermitian L^(k) bound", [] { return hermitian_sweep(true); }},
        {"solver equals brute force (q=2 n<=6, q=3 n<=4)", oracle_equivalence},
        {"counting bound T_n(m) <= 2^(2^m+m), q=2, n=3..12", counting_bound},
        {"hermitian geometry", hermitian_geometry},
        {"complexity invariants", invariant_suite},
        {"random binary profile smoke test", statistical_smoke},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " -- "
                  << o.detail << " (" << std::fixed << std::setprecision(2) << secs << "s)" << std::endl;
        failed += !o.pass;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
