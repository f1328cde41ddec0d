#pragma once

// Explicit inversive sequences and seeded uniform random sequences over F_q.
//
// Random draws use std::mt19937_64 (fully specified by the C++ standard, so
// identical on every conforming platform) with rejection sampling onto
// [0, q): a 64-bit word x is accepted iff x < floor(2^64 / q) * q, and the
// element is x mod q. std::uniform_int_distribution is deliberately not
// used because its algorithm is implementation-defined.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "sequence.hpp"

namespace nlcx {

namespace detail {

inline void record_field(Provenance& prov, const Field& f) {
    prov.set("prim", f.primitive());
    prov.set("mod", join_modulus(f.modulus()));
}

}  // namespace detail

/// s_i = (a e^i - a)^{-1} for 1 <= i <= q-2, e the field's primitive element.
inline Sequence inversive_finite(const FieldPtr& field, Elem a = 1) {
    const Field& f = *field;
    if (!f.contains(a) || a == 0) throw std::invalid_argument("inversive sequence needs a nonzero a");
    if (f.q() < 3) throw std::invalid_argument("inversive sequence needs q >= 3");
    Sequence s{field, {}, {GeneratorKind::inversive, {}}};
    s.elems.reserve(f.q() - 2);
    for (std::uint32_t i = 1; i <= f.q() - 2; ++i)
        s.elems.push_back(f.inv(f.sub(f.mul(a, f.primitive_pow(i)), a)));
    s.provenance.set("a", a);
    detail::record_field(s.provenance, f);
    return s;
}

/// The order-d element e^{(q-1)/d}.
inline Elem periodic_generator(const Field& f, std::uint64_t d) {
    if (d == 0 || (f.q() - 1) % d != 0) throw std::invalid_argument("d must divide q-1");
    return f.primitive_pow(static_cast<std::int64_t>((f.q() - 1) / d));
}

/// True when (d, b, c) is admissible: d | q-1, d < q-1, b and c nonzero and
/// c b^{-1} outside the subgroup generated by u = e^{(q-1)/d}.
inline bool periodic_admissible(const Field& f, std::uint64_t d, Elem b, Elem c) {
    if (d == 0 || (f.q() - 1) % d != 0 || d >= f.q() - 1) return false;
    if (b == 0 || c == 0 || !f.contains(b) || !f.contains(c)) return false;
    return !f.in_cyclic_subgroup(periodic_generator(f, d), f.div(c, b));
}

/// Smallest c (integer encoding) making (d, b, c) admissible.
inline Elem default_periodic_c(const Field& f, std::uint64_t d, Elem b = 1) {
    if (d == 0 || (f.q() - 1) % d != 0 || d >= f.q() - 1)
        throw std::invalid_argument("d must be a proper divisor of q-1");
    for (Elem c = 1; c < f.q(); ++c)
        if (periodic_admissible(f, d, b, c)) return c;
    throw std::logic_error("no admissible c");
}

/// First n terms of s_i = (b u^i - c)^{-1}, i >= 1, with u = e^{(q-1)/d}.
inline Sequence inversive_periodic(const FieldPtr& field, std::uint64_t d, Elem b, Elem c, std::size_t n) {
    const Field& f = *field;
    if (d == 0 || (f.q() - 1) % d != 0) throw std::invalid_argument("d must divide q-1");
    if (d >= f.q() - 1) throw std::invalid_argument("d must be smaller than q-1");
    if (b == 0 || c == 0 || !f.contains(b) || !f.contains(c))
        throw std::invalid_argument("b and c must be nonzero field elements");
    const Elem u = periodic_generator(f, d);
    if (f.in_cyclic_subgroup(u, f.div(c, b)))
        throw std::invalid_argument("c/b lies in the subgroup generated by u = e^((q-1)/d)");
    Sequence s{field, {}, {GeneratorKind::periodic, {}}};
    s.elems.reserve(n);
    Elem ui = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        ui = f.mul(ui, u);
        s.elems.push_back(f.inv(f.sub(f.mul(b, ui), c)));
    }
    s.provenance.set("d", d).set("b", b).set("c", c).set("n", n);
    detail::record_field(s.provenance, f);
    return s;
}

/// Least positive shift t with s_{i+t} = s_i for every i in range, or 0 if
/// the sequence is too short to exhibit any period.
inline std::size_t least_period(const Sequence& s) {
    for (std::size_t t = 1; t < s.size(); ++t) {
        bool ok = true;
        for (std::size_t i = 0; i + t < s.size() && ok; ++i) ok = s.elems[i] == s.elems[i + t];
        if (ok) return t;
    }
    return 0;
}

/// One uniform element of [0, q) from the engine, by rejection.
inline Elem draw_uniform(std::mt19937_64& rng, std::uint32_t q) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % q;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return static_cast<Elem>(x % q);
    }
}

/// n independent uniform draws from F_q, reproducible for a fixed seed.
inline Sequence random_sequence(const FieldPtr& field, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Sequence s{field, {}, {GeneratorKind::random, {}}};
    s.elems.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.elems.push_back(draw_uniform(rng, field->q()));
    s.provenance.set("n", n).set("seed", seed);
    detail::record_field(s.provenance, *field);
    return s;
}

/// Per-sample seed used by the Monte Carlo harness.
constexpr std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept { return seed ^ index; }

}  // namespace nlcx
