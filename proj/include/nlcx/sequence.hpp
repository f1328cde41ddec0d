#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace nlcx {

enum class GeneratorKind { external, inversive, periodic, random, hermitian };

inline std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::external: return "external";
        case GeneratorKind::inversive: return "inversive";
        case GeneratorKind::periodic: return "periodic";
        case GeneratorKind::random: return "random";
        case GeneratorKind::hermitian: return "hermitian";
    }
    return "external";
}

inline GeneratorKind parse_generator_kind(const std::string& s) {
    for (auto k : {GeneratorKind::external, GeneratorKind::inversive, GeneratorKind::periodic, GeneratorKind::random,
                   GeneratorKind::hermitian})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown generator kind '" + s + "'");
}

/// Generator kind plus its parameters, kept in insertion order so that the
/// file header is stable.
struct Provenance {
    GeneratorKind kind = GeneratorKind::external;
    std::vector<std::pair<std::string, std::string>> params;

    Provenance& set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : params)
            if (k == key) {
                v = value;
                return *this;
            }
        params.emplace_back(key, value);
        return *this;
    }
    template <typename Int>
        requires std::is_integral_v<Int>
    Provenance& set(const std::string& key, Int value) {
        return set(key, std::to_string(value));
    }

    std::optional<std::string> get(const std::string& key) const {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return std::nullopt;
    }

    std::optional<std::int64_t> get_int(const std::string& key) const {
        auto v = get(key);
        if (!v) return std::nullopt;
        return std::stoll(*v);
    }

    bool operator==(const Provenance&) const = default;
};

struct Sequence {
    FieldPtr field;
    std::vector<Elem> elems;
    Provenance provenance;

    std::size_t size() const noexcept { return elems.size(); }
    bool empty() const noexcept { return elems.empty(); }
    Elem operator[](std::size_t i) const { return elems[i]; }

    bool all_zero() const {
        return std::all_of(elems.begin(), elems.end(), [](Elem x) { return x == 0; });
    }

    /// Initial segment of length n.
    Sequence prefix(std::size_t n) const {
        Sequence s{field, {elems.begin(), elems.begin() + static_cast<std::ptrdiff_t>(std::min(n, elems.size()))},
                   provenance};
        return s;
    }
};

/// Wraps raw values as an externally supplied sequence, validating ranges.
inline Sequence make_sequence(FieldPtr field, std::vector<Elem> values) {
    for (Elem x : values)
        if (!field->contains(x)) throw std::invalid_argument("sequence element " + std::to_string(x) + " outside F_q");
    return Sequence{std::move(field), std::move(values), {}};
}

namespace detail {

inline std::string join_modulus(const std::vector<std::uint32_t>& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ":" : "") + std::to_string(m[i]);
    return out;
}

inline std::vector<std::uint32_t> split_modulus(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return out;
}

}  // namespace detail

/// Header `# q=<q> kind=<kind> params=k1=v1,k2=v2,...` followed by one
/// integer-encoded element per line. The field's modulus and primitive
/// element are always recorded (`mod`, `prim`) so that a file fully
/// determines the field it lives in.
inline void write_sequence(std::ostream& os, const Sequence& s) {
    Provenance prov = s.provenance;
    prov.set("prim", s.field->primitive());
    prov.set("mod", detail::join_modulus(s.field->modulus()));
    os << "# q=" << s.field->q() << " kind=" << to_string(prov.kind) << " params=";
    for (std::size_t i = 0; i < prov.params.size(); ++i)
        os << (i ? "," : "") << prov.params[i].first << '=' << prov.params[i].second;
    os << '\n';
    for (Elem x : s.elems) os << x << '\n';
}

inline Sequence read_sequence(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
        throw std::invalid_argument("sequence file: missing '# q=... kind=... params=...' header");

    std::optional<std::uint64_t> q;
    Provenance prov;
    std::istringstream hs(line.substr(2));
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("sequence file: malformed header token '" + tok + "'");
        auto key = tok.substr(0, eq), value = tok.substr(eq + 1);
        if (key == "q") {
            q = std::stoull(value);
        } else if (key == "kind") {
            prov.kind = parse_generator_kind(value);
        } else if (key == "params") {
            std::stringstream ps(value);
            std::string kv;
            while (std::getline(ps, kv, ',')) {
                if (kv.empty()) continue;
                auto e2 = kv.find('=');
                if (e2 == std::string::npos) throw std::invalid_argument("sequence file: malformed param '" + kv + "'");
                prov.params.emplace_back(kv.substr(0, e2), kv.substr(e2 + 1));
            }
        } else {
            throw std::invalid_argument("sequence file: unknown header key '" + key + "'");
        }
    }
    if (!q) throw std::invalid_argument("sequence file: header lacks q");

    auto [p, e] = split_prime_power(*q);
    std::optional<std::vector<std::uint32_t>> modulus;
    std::optional<Elem> prim;
    if (auto m = prov.get("mod")) modulus = detail::split_modulus(*m);
    if (auto g = prov.get_int("prim")) prim = static_cast<Elem>(*g);
    auto field = make_field(p, e, modulus, prim);

    std::vector<Elem> values;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        unsigned long v = std::stoul(line, &pos);
        if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw std::invalid_argument("sequence file: trailing characters in '" + line + "'");
        if (v >= field->q()) throw std::invalid_argument("sequence file: element " + line + " outside F_q");
        values.push_back(static_cast<Elem>(v));
    }
    return Sequence{field, std::move(values), std::move(prov)};
}

}  // namespace nlcx
