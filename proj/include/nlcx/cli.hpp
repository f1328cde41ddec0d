#pragma once

// `nlcx` command-line front end. Exit status: 0 on success, 1 when a bound
// check fails, 2 on usage, parameter or cost-guard errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "complexity.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "generators.hpp"
#include "hermitian.hpp"
#include "sequence.hpp"
#include "stats.hpp"

namespace nlcx {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchema = 1;

namespace cli {

using json = nlohmann::json;

inline constexpr const char* kCanonical =
    "modulus=lex-min-monic-irreducible(constant-first) primitive=min-encoding Q=min-affine(x!=0) "
    "orbits=by-min-member prng=mt19937_64+rejection sample_seed=seed^index";

struct RunContext {
    std::string command_line;
    unsigned threads = 1;

    std::vector<std::string> stanza(const Field* field) const {
        std::vector<std::string> lines{"tool=nlcx version=" + std::string(kVersion) + " schema=" + std::to_string(kSchema),
                                       "command=" + command_line, "canonical: " + std::string(kCanonical)};
        if (field) lines.push_back("field: " + field->describe());
        return lines;
    }

    void write_stanza(std::ostream& os, const Field* field) const {
        for (const auto& l : stanza(field)) os << "# " << l << '\n';
    }

    json stanza_json(const Field* field) const {
        json j{{"tool", "nlcx"}, {"version", kVersion}, {"command", command_line}, {"canonical", kCanonical},
               {"threads", threads}};
        if (field) j["field"] = field->describe();
        return j;
    }
};

/// Opens `path` for writing, or returns `fallback` when path is empty.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

inline json witness_json(const FeedbackPolynomial& w) {
    json terms = json::array();
    for (const auto& t : w.terms) terms.push_back({{"exp", t.exps}, {"coeff", t.coeff}});
    return {{"vars", w.vars},
            {"mode", w.mode == DegreeMode::per_variable ? "per-variable" : "total"},
            {"k", w.k},
            {"terms", terms}};
}

struct GenArgs {
    std::string kind;
    std::optional<std::uint64_t> q, d, n, seed;
    std::optional<std::uint32_t> ell;
    std::optional<Elem> a, b, c, prim;
    std::string out;
};

inline int cmd_gen(const GenArgs& g, const RunContext& ctx, std::ostream& out) {
    Sequence s;
    if (g.kind == "hermitian") {
        if (!g.ell) throw std::invalid_argument("--ell is required for --kind hermitian");
        s = hermitian_sequence(HermitianCurve(*g.ell, g.prim));
    } else {
        if (!g.q) throw std::invalid_argument("--q is required for --kind " + g.kind);
        auto field = make_field_of_order(*g.q, g.prim);
        if (g.kind == "inversive") {
            s = inversive_finite(field, g.a.value_or(1));
        } else if (g.kind == "periodic") {
            if (!g.d) throw std::invalid_argument("--d is required for --kind periodic");
            const Elem b = g.b.value_or(1);
            const Elem c = g.c ? *g.c : default_periodic_c(*field, *g.d, b);
            s = inversive_periodic(field, *g.d, b, c, g.n.value_or(*g.d));
        } else if (g.kind == "random") {
            if (!g.n) throw std::invalid_argument("--n is required for --kind random");
            s = random_sequence(field, *g.n, g.seed.value_or(0));
        } else {
            throw std::invalid_argument("unknown --kind '" + g.kind + "'");
        }
    }
    Output o(g.out, out);
    std::ostringstream body;
    write_sequence(body, s);
    // header line first, then the run stanza as further comment lines
    const std::string text = body.str();
    const auto nl = text.find('\n');
    *o << text.substr(0, nl + 1);
    ctx.write_stanza(*o, s.field.get());
    *o << text.substr(nl + 1);
    return 0;
}

struct AnalyzeArgs {
    std::string in;
    std::string kind = "nk";
    unsigned k = 1;
    bool profile = false;
    bool witness = false;
    std::string out;
};

inline int cmd_analyze(const AnalyzeArgs& a, const RunContext& ctx, std::ostream& out) {
    std::ifstream is(a.in);
    if (!is) throw std::invalid_argument("cannot open input file '" + a.in + "'");
    const Sequence s = read_sequence(is);
    if (s.empty()) throw std::invalid_argument("input sequence is empty");
    const ComplexityKind kind = parse_complexity_kind(a.kind);
    if (a.k < 1) throw std::invalid_argument("--k must be at least 1");
    Output o(a.out, out);
    if (a.profile) {
        const auto prof = profile(s, a.k, kind);
        ctx.write_stanza(*o, s.field.get());
        *o << "n,value\n";
        for (std::size_t n = 1; n <= prof.size(); ++n) *o << n << ',' << prof[n - 1] << '\n';
        return 0;
    }
    SolverOptions opt;
    opt.witness = a.witness;
    const auto rep = complexity(s, kind, a.k, opt);
    json j{{"schema", kSchema}, {"kind", to_string(kind)}, {"n", rep.n}, {"value", rep.value}};
    if (rep.k) j["k"] = *rep.k;
    if (kind == ComplexityKind::max_order) j["k"] = s.field->q() - 1;
    if (a.witness && rep.witness) j["witness"] = witness_json(*rep.witness);
    j["run"] = ctx.stanza_json(s.field.get());
    *o << j.dump() << '\n';
    return 0;
}

struct VerifyArgs {
    std::string construction;
    std::optional<std::uint64_t> q, d;
    std::optional<std::uint32_t> ell;
    std::optional<Elem> a, b, c, prim;
    unsigned kmin = 1, kmax = 1;
    std::uint64_t nmult = 3;
    std::vector<std::string> kinds{"nk", "lk", "lin"};
    std::string out, summary;
};

inline int cmd_verify(const VerifyArgs& v, const RunContext& ctx, std::ostream& out, std::ostream& err) {
    VerifyRequest req;
    auto& c = req.construction;
    c.kind = parse_construction(v.construction);
    if (c.kind == ConstructionKind::hermitian) {
        if (!v.ell) throw std::invalid_argument("--ell is required for the hermitian construction");
        c.ell = *v.ell;
    } else if (c.kind != ConstructionKind::random) {
        if (!v.q) throw std::invalid_argument("--q is required for the " + v.construction + " construction");
        c.q = *v.q;
    }
    c.primitive = v.prim;
    c.a = v.a.value_or(1);
    c.b = v.b.value_or(1);
    c.c = v.c;
    c.d = v.d;
    c.period_multiple = v.nmult;
    req.kmin = v.kmin;
    req.kmax = v.kmax;
    req.nk = req.lk = req.linear = false;
    for (const auto& k : v.kinds) {
        if (k == "nk") req.nk = true;
        else if (k == "lk") req.lk = true;
        else if (k == "lin") req.linear = true;
        else throw std::invalid_argument("unknown kind '" + k + "' (expected nk, lk, lin)");
    }
    req.threads = ctx.threads;

    const auto checks = verify(req);
    const FieldPtr field = c.kind == ConstructionKind::hermitian
                               ? HermitianCurve(c.ell, c.primitive).field()
                               : make_field_of_order(c.q, c.primitive);
    Output o(v.out, out);
    ctx.write_stanza(*o, field.get());
    *o << "theorem,n,k,bound_num,bound_den,computed,pass,param\n";
    std::size_t failed = 0, trivial = 0;
    for (const auto& ch : checks) {
        *o << to_string(ch.theorem) << ',' << ch.n << ',' << ch.k << ',' << ch.bound.numerator() << ','
           << ch.bound.denominator() << ',' << ch.computed << ',' << (ch.pass ? "true" : "false") << ','
           << ch.d_or_ell << '\n';
        failed += !ch.pass;
        trivial += ch.trivial;
    }
    json summary{{"schema", kSchema},
                 {"construction", v.construction},
                 {"checks", checks.size()},
                 {"passed", checks.size() - failed},
                 {"failed", failed},
                 {"trivially_passed", trivial},
                 {"all_pass", failed == 0},
                 {"run", ctx.stanza_json(field.get())}};
    if (v.summary.empty()) {
        err << summary.dump() << '\n';
    } else {
        Output so(v.summary, err);
        *so << summary.dump(2) << '\n';
    }
    return failed == 0 ? 0 : 1;
}

struct CountArgs {
    std::uint64_t q = 2;
    unsigned k = 1;
    std::uint64_t n = 1;
    std::vector<std::uint64_t> m;
    std::uint64_t max_sequences = std::uint64_t{1} << 22;
    std::string out;
};

inline int cmd_count(const CountArgs& a, const RunContext& ctx, std::ostream& out) {
    if (a.k < 1) throw std::invalid_argument("--k must be at least 1");
    const auto field = make_field_of_order(a.q);
    CountOptions opt;
    opt.max_sequences = a.max_sequences;
    opt.threads = ctx.threads;
    const auto results = exhaustive_counts(field, a.k, a.n, a.m, opt);
    Output o(a.out, out);
    ctx.write_stanza(*o, field.get());
    *o << "q,k,n,m,count,bound,pass\n";
    bool ok = true;
    for (const auto& r : results) {
        *o << r.q << ',' << r.k << ',' << r.n << ',' << r.m << ',' << r.count << ',' << r.bound_str() << ','
           << (r.pass ? "true" : "false") << '\n';
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

struct ProfileArgs {
    std::uint64_t q = 2;
    unsigned k = 1;
    std::uint64_t nmax = 64;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> grid;
    std::optional<Elem> prim;
    std::uint64_t max_length = 4096;
    std::string out;
};

inline int cmd_profile(const ProfileArgs& a, const RunContext& ctx, std::ostream& out) {
    std::vector<std::uint64_t> grid = a.grid;
    if (grid.empty())
        for (std::uint64_t n = 1; n <= a.nmax; ++n) grid.push_back(n);
    MonteCarloOptions opt;
    opt.threads = ctx.threads;
    opt.max_length = a.max_length;
    opt.primitive = a.prim;
    const auto st = monte_carlo_profile(a.q, a.k, grid, a.samples, a.seed, opt);
    const auto field = make_field_of_order(a.q, a.prim);
    Output o(a.out, out);
    ctx.write_stanza(*o, field.get());
    *o << "n,mean,min,max,p05,p50,p95,ref,frac_below_ref_minus_1\n";
    *o << std::setprecision(6) << std::fixed;
    for (const auto& g : st.grid)
        *o << g.n << ',' << g.mean << ',' << g.min << ',' << g.max << ',' << g.p05 << ',' << g.p50 << ',' << g.p95
           << ',' << g.ref << ',' << g.frac_below_ref_minus_1 << '\n';
    if (st.grid.size() >= 3)
        *o << "# slope_estimate(mean vs ln n, exploratory)=" << empirical_constant(st) << '\n';
    return 0;
}

struct HermitianArgs {
    std::uint32_t ell = 2;
    std::string dump = "orbits";
    std::optional<Elem> prim;
    std::string out;
};

inline int cmd_hermitian(const HermitianArgs& a, const RunContext& ctx, std::ostream& out) {
    HermitianCurve curve(a.ell, a.prim);
    Output o(a.out, out);
    ctx.write_stanza(*o, curve.field().get());
    *o << "# ell=" << curve.ell() << " q=" << curve.q() << " genus=" << curve.genus()
       << " M=" << curve.sequence_length() << '\n';
    if (a.dump == "points") {
        const auto pts = curve.points();
        *o << "# " << pts.size() << " rational points\n";
        for (const auto& P : pts) *o << P.str() << '\n';
    } else if (a.dump == "orbits") {
        const auto tab = orbit_decomposition(curve);
        for (std::size_t j = 0; j < tab.orbits.size(); ++j) {
            *o << (j == tab.q_orbit_index ? "Q" : "P" + std::to_string(j)) << ':';
            for (const auto& P : tab.orbits[j]) *o << ' ' << P.str();
            *o << '\n';
        }
        *o << "fixed:";
        for (const auto& P : tab.fixed_and_short) *o << ' ' << P.str();
        *o << '\n';
    } else if (a.dump == "h") {
        const auto tab = orbit_decomposition(curve);
        *o << describe_h(curve, construct_h(curve, tab.Q())) << '\n';
    } else {
        throw std::invalid_argument("--dump must be one of points, orbits, h");
    }
    return 0;
}

}  // namespace cli

/// Entry point shared by the `nlcx` binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli;
    CLI::App app{"nlcx: nonlinear complexity workbench for sequences over finite fields"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    RunContext ctx;
    app.add_option("--threads", ctx.threads, "worker threads")->envname("NLCX_THREADS");

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "generate a sequence file");
    g->add_option("--kind", gen.kind, "inversive|periodic|random|hermitian")
        ->required()
        ->check(CLI::IsMember({"inversive", "periodic", "random", "hermitian"}));
    g->add_option("--q", gen.q, "field order");
    g->add_option("--ell", gen.ell, "Hermitian parameter, q = ell^2");
    g->add_option("--a", gen.a);
    g->add_option("--b", gen.b);
    g->add_option("--c", gen.c);
    g->add_option("--d", gen.d, "period (divisor of q-1)");
    g->add_option("--n", gen.n, "length");
    g->add_option("--seed", gen.seed);
    g->add_option("--prim", gen.prim, "primitive element override (integer encoding)");
    g->add_option("-o,--out", gen.out);

    AnalyzeArgs an;
    auto* a = app.add_subcommand("analyze", "compute a complexity of a sequence file");
    a->add_option("--in", an.in)->required();
    a->add_option("--kind", an.kind)->check(CLI::IsMember({"nk", "lk", "lin", "moc"}));
    a->add_option("--k", an.k);
    a->add_flag("--profile", an.profile, "emit the profile over all initial segments as CSV");
    a->add_flag("--witness", an.witness, "include a feedback polynomial attaining the value");
    a->add_option("-o,--out", an.out);

    VerifyArgs ve;
    auto* v = app.add_subcommand("verify", "check computed complexities against the lower bounds");
    v->add_option("--construction", ve.construction)
        ->required()
        ->check(CLI::IsMember({"inversive", "periodic", "hermitian", "random"}));
    v->add_option("--q", ve.q);
    v->add_option("--ell", ve.ell);
    v->add_option("--a", ve.a);
    v->add_option("--b", ve.b);
    v->add_option("--c", ve.c);
    v->add_option("--d", ve.d, "single period; default: every proper divisor of q-1");
    v->add_option("--nmult", ve.nmult, "periodic: lengths up to nmult*d");
    v->add_option("--kmin", ve.kmin);
    v->add_option("--kmax", ve.kmax);
    v->add_option("--kinds", ve.kinds, "subset of nk,lk,lin")->delimiter(',');
    v->add_option("--prim", ve.prim);
    v->add_option("-o,--out", ve.out, "CSV output");
    v->add_option("--summary", ve.summary, "JSON summary output (default: stderr)");

    CountArgs co;
    auto* c = app.add_subcommand("count", "exhaustive count of sequences with N^(k) <= m");
    c->add_option("--q", co.q)->required();
    c->add_option("--k", co.k);
    c->add_option("--n", co.n)->required();
    c->add_option("--m", co.m)->required()->delimiter(',');
    c->add_option("--max-sequences", co.max_sequences, "cost guard on q^n");
    c->add_option("-o,--out", co.out);

    ProfileArgs pr;
    auto* p = app.add_subcommand("profile", "Monte Carlo profile of N_n^(k) for random sequences");
    p->add_option("--q", pr.q)->required();
    p->add_option("--k", pr.k);
    p->add_option("--nmax", pr.nmax);
    p->add_option("--samples", pr.samples);
    p->add_option("--seed", pr.seed);
    p->add_option("--grid", pr.grid, "explicit lengths (default 1..nmax)")->delimiter(',');
    p->add_option("--prim", pr.prim);
    p->add_option("--max-length", pr.max_length, "cost guard on the longest sampled sequence");
    p->add_option("-o,--out", pr.out);

    HermitianArgs he;
    auto* h = app.add_subcommand("hermitian", "inspect the Hermitian curve construction");
    h->add_option("--ell", he.ell)->required();
    h->add_option("--dump", he.dump)->check(CLI::IsMember({"points", "orbits", "h"}));
    h->add_option("--prim", he.prim);
    h->add_option("-o,--out", he.out);

    for (int i = 0; i < argc; ++i) ctx.command_line += (i ? " " : "") + std::string(argv[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ctx.threads < 1) throw std::invalid_argument("--threads must be at least 1");
        if (*g) return cmd_gen(gen, ctx, out);
        if (*a) return cmd_analyze(an, ctx, out);
        if (*v) return cmd_verify(ve, ctx, out, err);
        if (*c) return cmd_count(co, ctx, out);
        if (*p) return cmd_profile(pr, ctx, out);
        if (*h) return cmd_hermitian(he, ctx, out);
    } catch (const GuardExceeded& e) {
        err << json{{"error", "guard"}, {"guard", e.guard()}, {"requested", static_cast<double>(e.requested())},
                    {"limit", static_cast<double>(e.limit())}, {"message", e.what()}}
                   .dump()
            << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << json{{"error", "parameter"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace nlcx
