#pragma once

// Exact arithmetic in small finite fields: GF(2^e) for 1 <= e <= 16 and
// GF(p) for prime p < 2^16. Elements are canonical integers in [0, q);
// multiplication and inversion go through exp/log tables built from a
// designated primitive element w.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "drfmds/errors.hpp"

namespace drfmds {

using Elem = std::uint16_t;

enum class FieldKind : std::uint8_t { BinaryExtension, Prime };

// One conventional primitive polynomial per degree, frozen: this table is
// part of the on-disk interface (shard files name the field, and the field
// fixes the element encoding). Masks include the x^e term.
inline constexpr std::array<std::uint32_t, 17> kPrimitivePoly = {
    0x0,      // degree 0: unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x89,     // x^7 + x^3 + 1
    0x11D,    // x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

namespace detail {

inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline unsigned pow_mod(unsigned base, unsigned exp, unsigned mod) {
    std::uint64_t r = 1, b = base % mod;
    while (exp) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<unsigned>(r);
}

}  // namespace detail

class Field {
public:
    static Field make(FieldKind kind, unsigned p, unsigned e) {
        if (kind == FieldKind::BinaryExtension) {
            if (p != 2)
                throw ValidationError("UnsupportedDegree: binary-extension fields require characteristic 2");
            if (e < 1 || e > 16)
                throw ValidationError("UnsupportedDegree: GF(2^e) supported for 1 <= e <= 16, got e=" +
                                      std::to_string(e));
            return Field(kind, 2, e);
        }
        if (e != 1)
            throw ValidationError("UnsupportedDegree: prime fields require e=1, got e=" + std::to_string(e));
        if (!detail::is_prime(p))
            throw ValidationError("NonPrimeCharacteristic: " + std::to_string(p) + " is not prime");
        if (p >= (1u << 16))
            throw ValidationError("UnsupportedDegree: prime fields limited to p < 2^16");
        return Field(kind, p, 1);
    }

    static Field gf2e(unsigned e) { return make(FieldKind::BinaryExtension, 2, e); }
    static Field prime_field(unsigned p) { return make(FieldKind::Prime, p, 1); }

    // Identifier strings: "gf2^E" or "prime:P".
    static Field parse(std::string_view id) {
        if (id.rfind("gf2^", 0) == 0) {
            unsigned e = parse_uint(id.substr(4), id);
            return gf2e(e);
        }
        if (id.rfind("prime:", 0) == 0) {
            unsigned p = parse_uint(id.substr(6), id);
            return prime_field(p);
        }
        throw ValidationError("BadFieldId: expected gf2^E or prime:P, got '" + std::string(id) + "'");
    }

    std::string id() const {
        if (kind_ == FieldKind::BinaryExtension) return "gf2^" + std::to_string(degree_);
        return "prime:" + std::to_string(characteristic_);
    }

    FieldKind kind() const { return kind_; }
    unsigned characteristic() const { return characteristic_; }
    unsigned degree() const { return degree_; }
    unsigned order() const { return order_; }
    std::uint32_t modulus() const { return modulus_; }
    Elem generator() const { return w_; }

    bool operator==(const Field& o) const {
        return kind_ == o.kind_ && order_ == o.order_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Elem add(Elem x, Elem y) const {
        if (kind_ == FieldKind::BinaryExtension) return x ^ y;
        unsigned s = unsigned(x) + unsigned(y);
        if (s >= order_) s -= order_;
        return static_cast<Elem>(s);
    }

    Elem neg(Elem x) const {
        if (kind_ == FieldKind::BinaryExtension) return x;
        return x == 0 ? 0 : static_cast<Elem>(order_ - x);
    }

    Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }

    Elem mul(Elem x, Elem y) const {
        if (x == 0 || y == 0) return 0;
        unsigned t = log_[x] + log_[y];
        if (t >= order_ - 1) t -= order_ - 1;
        return exp_[t];
    }

    Elem inv(Elem x) const {
        if (x == 0) throw ValidationError("DivisionByZero: 0 has no inverse in " + id());
        unsigned lx = log_[x];
        return exp_[lx == 0 ? 0 : order_ - 1 - lx];
    }

    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }

    // w^idx with idx taken mod q-1.
    Elem exp(std::uint64_t idx) const { return exp_[idx % (order_ - 1)]; }

    unsigned log(Elem x) const {
        if (x == 0) throw ValidationError("DivisionByZero: log(0) undefined");
        return log_[x];
    }

    Elem pow(Elem x, long long e) const {
        if (x == 0) {
            if (e < 0) throw ValidationError("ZeroToNegativePower");
            return e == 0 ? 1 : 0;
        }
        long long order = order_ - 1;
        long long r = e % order;
        if (r < 0) r += order;
        std::uint64_t idx = std::uint64_t(log_[x]) * std::uint64_t(r) % std::uint64_t(order);
        return exp_[idx];
    }

private:
    Field(FieldKind kind, unsigned p, unsigned e)
        : kind_(kind), characteristic_(p), degree_(e) {
        if (kind == FieldKind::BinaryExtension) {
            order_ = 1u << e;
            modulus_ = kPrimitivePoly[e];
            w_ = (e == 1) ? 1 : 2;  // the monomial x; in GF(2), x == 1 mod (x+1)
            build_tables_binary();
        } else {
            order_ = p;
            modulus_ = 0;
            w_ = smallest_primitive_root(p);
            build_tables_prime();
        }
    }

    void build_tables_binary() {
        const unsigned q = order_;
        exp_.assign(q - 1, 0);
        log_.assign(q, 0);
        std::vector<bool> seen(q, false);
        std::uint32_t acc = 1;
        for (unsigned i = 0; i < q - 1; ++i) {
            if (acc == 0 || acc >= q || seen[acc])
                throw std::logic_error("built-in polynomial for degree " + std::to_string(degree_) +
                                       " is not primitive");
            seen[acc] = true;
            exp_[i] = static_cast<Elem>(acc);
            log_[acc] = i;
            // multiply by x and reduce
            acc <<= 1;
            if (acc & q) acc ^= modulus_;
        }
        if (acc != 1)
            throw std::logic_error("built-in polynomial for degree " + std::to_string(degree_) +
                                   " is not primitive");
    }

    void build_tables_prime() {
        const unsigned q = order_;
        exp_.assign(q - 1, 0);
        log_.assign(q, 0);
        std::uint64_t acc = 1;
        for (unsigned i = 0; i < q - 1; ++i) {
            exp_[i] = static_cast<Elem>(acc);
            log_[static_cast<Elem>(acc)] = i;
            acc = acc * w_ % q;
        }
        if (acc != 1) throw std::logic_error("primitive root search failed for p=" + std::to_string(q));
    }

    static Elem smallest_primitive_root(unsigned p) {
        if (p == 2) return 1;
        const auto factors = detail::prime_factors(p - 1);
        for (unsigned g = 2; g < p; ++g) {
            bool primitive = true;
            for (unsigned f : factors) {
                if (detail::pow_mod(g, (p - 1) / f, p) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return static_cast<Elem>(g);
        }
        throw std::logic_error("no primitive root found for p=" + std::to_string(p));
    }

    static unsigned parse_uint(std::string_view s, std::string_view whole) {
        if (s.empty()) throw ValidationError("BadFieldId: '" + std::string(whole) + "'");
        unsigned v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw ValidationError("BadFieldId: '" + std::string(whole) + "'");
            v = v * 10 + unsigned(c - '0');
            if (v > 1u << 20) throw ValidationError("BadFieldId: value out of range in '" + std::string(whole) + "'");
        }
        return v;
    }

    FieldKind kind_;
    unsigned characteristic_;
    unsigned degree_;
    unsigned order_;
    std::uint32_t modulus_;
    Elem w_;
    std::vector<Elem> exp_;      // length q-1: exp_[i] = w^i
    std::vector<unsigned> log_;  // length q: log_[w^i] = i, log_[0] unused
};

// Whether w^{2i} + w^i + 1 != 0. Requires order q = 2^{2t}; guaranteed
// nonzero for 0 <= i < (q-1)/3 and zero exactly when w^i is a nontrivial
// cube root of unity.
inline bool cubic_nonvanishing(const Field& f, unsigned i) {
    if (f.kind() != FieldKind::BinaryExtension || f.degree() % 2 != 0)
        throw ValidationError("FieldNotOrderFourPower: need q = 2^{2t}, got " + f.id());
    if (i >= f.order() - 1)
        throw ValidationError("BadParameters: exponent " + std::to_string(i) + " out of range");
    Elem v = f.add(f.add(f.exp(2ull * i), f.exp(i)), 1);
    return v != 0;
}

}  // namespace drfmds
