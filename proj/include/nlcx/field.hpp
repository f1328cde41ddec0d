#pragma once

// Finite fields F_q, q = p^e <= 2^16, with table-driven arithmetic.
//
// Elements are carried as their integer encoding: the coefficient vector of
// the residue class modulo the field modulus read in base p, constant term
// least significant. Multiplication and inversion go through exponent/log
// tables keyed by the field's primitive element.

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlcx {

using Elem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Dense polynomial over F_p, constant term first. Only used while building a
/// field; the hot path never touches it.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is prime and a != 0
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t k = p - 2; k; k >>= 1) {
        if (k & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

/// Remainder of a modulo the nonzero polynomial m.
inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    Poly mm = m;
    trim(mm);
    trim(a);
    const std::size_t dm = mm.size() - 1;
    const std::uint32_t lead_inv = inv_mod_p(mm.back(), p);
    while (a.size() >= mm.size()) {
        const std::size_t shift = a.size() - mm.size();
        const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = c * mm[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

/// True iff the monic polynomial f of degree >= 1 has no monic factor of
/// degree 1..deg(f)/2 over F_p (trial division).
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        Poly g(d + 1, 0);
        g[d] = 1;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Description of F_q together with its arithmetic tables. Immutable once
/// built, so a FieldPtr can be shared freely across threads.
class Field {
public:
    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Monic modulus, constant term first, length degree()+1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    Elem primitive() const noexcept { return primitive_; }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }

    bool contains(Elem x) const noexcept { return x < q_; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
        return digitwise(a, b);
    }
    Elem neg(Elem a) const { return neg_table_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Any integer exponent; negative exponents invert first. 0^0 = 1.
    Elem pow(Elem a, std::int64_t k) const {
        if (a == 0) {
            if (k == 0) return 1;
            if (k < 0) throw std::domain_error("inverse of zero");
            return 0;
        }
        const std::int64_t n = q_ - 1;
        std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (((k % n) + n) % n)) % n;
        return exp_[static_cast<std::size_t>(r)];
    }

    /// e^k for the designated primitive element e.
    Elem primitive_pow(std::int64_t k) const {
        const std::int64_t n = q_ - 1;
        return exp_[static_cast<std::size_t>(((k % n) + n) % n)];
    }

    /// Least t >= 1 with x^t = 1.
    std::uint64_t order(Elem x) const {
        if (x == 0) throw std::domain_error("order of zero");
        std::uint64_t t = q_ - 1;
        for (std::uint64_t r : detail::prime_factors(q_ - 1)) {
            while (t % r == 0 && pow(x, static_cast<std::int64_t>(t / r)) == 1) t /= r;
        }
        return t;
    }

    /// True iff c lies in the cyclic subgroup generated by u.
    bool in_cyclic_subgroup(Elem u, Elem c) const {
        if (u == 0 || c == 0) throw std::domain_error("cyclic subgroup query with zero element");
        return pow(c, static_cast<std::int64_t>(order(u))) == 1;
    }

    std::vector<std::uint32_t> coeffs(Elem x) const {
        std::vector<std::uint32_t> c(e_, 0);
        for (std::uint32_t i = 0; i < e_; ++i) {
            c[i] = x % p_;
            x /= p_;
        }
        return c;
    }

    Elem from_coeffs(std::span<const std::uint32_t> c) const {
        if (c.size() > e_) throw std::invalid_argument("too many coefficients for field element");
        Elem x = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
            x = x * p_ + c[i];
        }
        return x;
    }

    /// `q=<int> p=<int> e=<int> modulus=[c0,...,ce] primitive=<int>`
    std::string describe() const {
        std::ostringstream os;
        os << "q=" << q_ << " p=" << p_ << " e=" << e_ << " modulus=[";
        for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
        os << "] primitive=" << primitive_;
        return os.str();
    }

    friend FieldPtr make_field(std::uint32_t, std::uint32_t, std::optional<std::vector<std::uint32_t>>,
                               std::optional<Elem>);

private:
    Field() = default;

    Elem digitwise(Elem a, Elem b) const {
        Elem r = 0, scale = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            r += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return r;
    }

    Elem slow_mul(Elem a, Elem b) const {
        auto pa = coeffs(a), pb = coeffs(b);
        detail::trim(pa);
        detail::trim(pb);
        auto r = detail::poly_mod(detail::poly_mul(pa, pb, p_), modulus_, p_);
        r.resize(e_, 0);
        return from_coeffs(r);
    }

    Elem slow_pow(Elem a, std::uint64_t k) const {
        Elem r = 1;
        while (k) {
            if (k & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            k >>= 1;
        }
        return r;
    }

    bool slow_is_primitive(Elem g, const std::vector<std::uint64_t>& factors) const {
        if (g == 0) return false;
        for (std::uint64_t r : factors)
            if (slow_pow(g, (q_ - 1) / r) == 1) return false;
        return true;
    }

    std::uint32_t p_ = 0, e_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    Elem primitive_ = 0;
    std::vector<Elem> exp_;             // exp_[i] = g^i, i in [0, 2(q-1))
    std::vector<std::uint32_t> log_;    // log_[x] for x != 0
    std::vector<Elem> neg_table_;
    std::vector<std::uint16_t> add_table_;  // q <= 256, p odd
};

/// Lexicographically smallest monic irreducible of degree e over F_p, with
/// coefficient vectors compared constant term first.
inline std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t e) {
    std::vector<std::uint32_t> f(e + 1, 0);
    f[e] = 1;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < e; ++i) count *= p;
    // c0 is the most significant digit of the enumeration
    for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t c = code;
        for (std::uint32_t i = e; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        if (e == 1 || detail::is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

/// Builds F_{p^e}. Without a modulus the canonical one is used; without a
/// primitive element the smallest primitive integer encoding is chosen.
inline FieldPtr make_field(std::uint32_t p, std::uint32_t e,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                           std::optional<Elem> primitive = std::nullopt) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw std::invalid_argument("field order exceeds 2^16");
    }

    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->e_ = e;
    f->q_ = static_cast<std::uint32_t>(q);

    if (modulus) {
        auto m = *modulus;
        if (m.size() != e + 1 || m.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree " + std::to_string(e));
        for (auto c : m)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
        if (!detail::is_irreducible(m, p)) throw std::invalid_argument("modulus is reducible");
        f->modulus_ = std::move(m);
    } else {
        f->modulus_ = canonical_modulus(p, e);
    }

    const auto factors = detail::prime_factors(q - 1);
    if (primitive) {
        if (*primitive >= q || !f->slow_is_primitive(*primitive, factors))
            throw std::invalid_argument("element " + std::to_string(*primitive) + " is not primitive");
        f->primitive_ = *primitive;
    } else {
        Elem g = 1;
        while (!f->slow_is_primitive(g, factors)) ++g;
        f->primitive_ = g;
    }

    const std::uint32_t n = f->q_ - 1;
    f->exp_.resize(2 * static_cast<std::size_t>(n));
    f->log_.assign(f->q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        f->exp_[i] = x;
        f->log_[x] = i;
        x = f->slow_mul(x, f->primitive_);
    }
    for (std::uint32_t i = n; i < 2 * n; ++i) f->exp_[i] = f->exp_[i - n];

    f->neg_table_.resize(f->q_);
    for (Elem a = 0; a < f->q_; ++a) {
        Elem r = 0, scale = 1, t = a;
        for (std::uint32_t i = 0; i < e; ++i) {
            r += ((p - t % p) % p) * scale;
            t /= p;
            scale *= p;
        }
        f->neg_table_[a] = r;
    }
    if (p != 2 && f->q_ <= 256) {
        f->add_table_.resize(static_cast<std::size_t>(f->q_) * f->q_);
        for (Elem a = 0; a < f->q_; ++a)
            for (Elem b = 0; b < f->q_; ++b)
                f->add_table_[static_cast<std::size_t>(a) * f->q_ + b] = static_cast<std::uint16_t>(f->digitwise(a, b));
    }
    return f;
}

/// Splits a prime power q into (p, e); throws if q is not a prime power.
inline std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    auto f = detail::prime_factors(q);
    if (f.size() != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    std::uint32_t e = 0;
    for (std::uint64_t t = q; t > 1; t /= f[0]) ++e;
    return {static_cast<std::uint32_t>(f[0]), e};
}

/// Convenience: the canonical field of order q.
inline FieldPtr make_field_of_order(std::uint64_t q, std::optional<Elem> primitive = std::nullopt) {
    auto [p, e] = split_prime_power(q);
    return make_field(p, e, std::nullopt, primitive);
}

/// A field element bound to its field. Arithmetic between elements of
/// different fields throws std::invalid_argument.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
        if (!field_ || !field_->contains(value_)) throw std::invalid_argument("element outside field");
    }

    const FieldPtr& field() const noexcept { return field_; }
    Elem value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const { return {field_, field_->add(value_, check(o))}; }
    FieldElement operator-(const FieldElement& o) const { return {field_, field_->sub(value_, check(o))}; }
    FieldElement operator*(const FieldElement& o) const { return {field_, field_->mul(value_, check(o))}; }
    FieldElement operator/(const FieldElement& o) const { return {field_, field_->div(value_, check(o))}; }
    FieldElement operator-() const { return {field_, field_->neg(value_)}; }
    FieldElement inv() const { return {field_, field_->inv(value_)}; }
    FieldElement pow(std::int64_t k) const { return {field_, field_->pow(value_, k)}; }
    std::uint64_t order() const { return field_->order(value_); }

    bool operator==(const FieldElement& o) const { return field_.get() == o.field_.get() && value_ == o.value_; }

private:
    Elem check(const FieldElement& o) const {
        if (field_.get() != o.field_.get()) throw std::invalid_argument("mixed-field operands");
        return o.value_;
    }

    FieldPtr field_;
    Elem value_;
};

}  // namespace nlcx
