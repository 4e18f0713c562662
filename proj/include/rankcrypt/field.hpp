#pragma once

// Arithmetic in GF(2) extension fields GF(2^N) in polynomial-basis
// representation. An element is a bit-packed polynomial of degree < N,
// bit i = coefficient of x^i; all arithmetic reduces modulo a primitive
// polynomial fixed by the FieldContext.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankcrypt {

namespace gf2poly {

// Polynomials over GF(2) packed into integers, bit i = coefficient of x^i.

inline int degree(std::uint64_t p) {
    return static_cast<int>(std::bit_width(p)) - 1;
}

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
    const int dm = degree(m);
    while (degree(a) >= dm && a != 0) {
        a ^= m << (degree(a) - dm);
    }
    return a;
}

// a*b mod m; requires degree(m) <= 32 so intermediates fit in 64 bits.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    const int dm = degree(m);
    std::uint64_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> dm) & 1) a ^= m;
    }
    return r;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a = mod(a, m);
    while (e != 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Trial division by every polynomial of degree 1..N/2.
inline bool is_irreducible(std::uint64_t p) {
    const int n = degree(p);
    if (n < 1) return false;
    if (n == 1) return true;
    for (int d = 1; 2 * d <= n; ++d) {
        const std::uint64_t lo = std::uint64_t{1} << d;
        const std::uint64_t hi = std::uint64_t{1} << (d + 1);
        for (std::uint64_t q = lo; q < hi; ++q) {
            if (mod(p, q) == 0) return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            fs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fs.push_back(m);
    return fs;
}

// The class of x must have multiplicative order 2^N - 1.
inline bool is_primitive(std::uint64_t p) {
    const int n = degree(p);
    if (!is_irreducible(p)) return false;
    const std::uint64_t group_order = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t f : prime_factors(group_order)) {
        if (powmod(2, group_order / f, p) == 1) return false;
    }
    return powmod(2, group_order, p) == 1;
}

}  // namespace gf2poly

class FieldElement;

class FieldContext {
public:
    static constexpr unsigned kMaxDegree = 32;
    // Primitivity is verified by order computation only up to this degree;
    // beyond it the default table below is pre-verified.
    static constexpr unsigned kPrimitivityCheckMax = 16;

    FieldContext(unsigned degree, std::uint64_t primitive_poly)
        : n_(degree), poly_(primitive_poly) {
        if (n_ < 1 || n_ > kMaxDegree)
            throw std::invalid_argument("field degree must be in [1, 32]");
        if (gf2poly::degree(poly_) != static_cast<int>(n_))
            throw std::invalid_argument("modulus degree does not match field degree");
        if ((poly_ & 1) == 0)
            throw std::invalid_argument("modulus must have constant coefficient 1");
        if (!gf2poly::is_irreducible(poly_))
            throw std::invalid_argument("modulus is not irreducible over GF(2)");
        if (n_ <= kPrimitivityCheckMax && !gf2poly::is_primitive(poly_))
            throw std::invalid_argument("modulus is irreducible but not primitive");
    }

    // Context with a pre-verified primitive polynomial for the given degree.
    static FieldContext with_default_poly(unsigned degree) {
        return FieldContext(degree, default_primitive_poly(degree));
    }

    static std::uint64_t default_primitive_poly(unsigned degree) {
        // All entries verified primitive (order of x equals 2^N - 1).
        static constexpr std::uint64_t table[kMaxDegree + 1] = {
            0,          0x3,        0x7,        0xB,        0x13,
            0x25,       0x43,       0x83,       0x11D,      0x211,
            0x409,      0x805,      0x1053,     0x201B,     0x4443,
            0x8003,     0x1100B,    0x20009,    0x40081,    0x80027,
            0x100009,   0x200005,   0x400003,   0x800021,   0x1000087,
            0x2000009,  0x4000047,  0x8000027,  0x10000009, 0x20000005,
            0x40800007, 0x80000009, 0x100400007,
        };
        if (degree < 1 || degree > kMaxDegree)
            throw std::invalid_argument("no default primitive polynomial for this degree");
        return table[degree];
    }

    unsigned degree() const { return n_; }
    std::uint64_t modulus() const { return poly_; }
    std::uint64_t field_size() const { return std::uint64_t{1} << n_; }
    std::uint64_t group_order() const { return field_size() - 1; }

    FieldElement element(std::uint64_t bits) const;
    FieldElement zero() const;
    FieldElement one() const;
    // The class of x, a primitive element by construction.
    FieldElement alpha() const;
    FieldElement alpha_pow(std::uint64_t e) const;

    std::uint64_t add_raw(std::uint64_t a, std::uint64_t b) const { return a ^ b; }
    std::uint64_t mul_raw(std::uint64_t a, std::uint64_t b) const {
        return gf2poly::mulmod(a, b, poly_);
    }
    std::uint64_t pow_raw(std::uint64_t a, std::uint64_t e) const {
        return gf2poly::powmod(a, e, poly_);
    }
    std::uint64_t inv_raw(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero field element");
        return gf2poly::powmod(a, group_order() - 1, poly_);
    }
    // a^(q^i) with the exponent taken mod N; i may be negative.
    std::uint64_t frobenius_raw(std::uint64_t a, long i) const {
        long r = i % static_cast<long>(n_);
        if (r < 0) r += n_;
        for (long s = 0; s < r; ++s) a = mul_raw(a, a);
        return a;
    }

    bool operator==(const FieldContext&) const = default;

private:
    unsigned n_;
    std::uint64_t poly_;
};

inline void require_same_context(const FieldContext& a, const FieldContext& b) {
    if (!(a == b)) throw std::invalid_argument("field context mismatch");
}

class FieldElement {
public:
    FieldElement(const FieldContext& ctx, std::uint64_t bits) : ctx_(ctx), v_(bits) {
        if (v_ >= ctx_.field_size())
            throw std::invalid_argument("element out of range for field");
    }

    const FieldContext& context() const { return ctx_; }
    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        require_same_context(ctx_, o.ctx_);
        return FieldElement(ctx_, ctx_.add_raw(v_, o.v_));
    }
    // Subtraction coincides with addition in characteristic 2.
    FieldElement operator-(const FieldElement& o) const { return *this + o; }
    FieldElement operator-() const { return *this; }

    FieldElement operator*(const FieldElement& o) const {
        require_same_context(ctx_, o.ctx_);
        return FieldElement(ctx_, ctx_.mul_raw(v_, o.v_));
    }
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    FieldElement inverse() const { return FieldElement(ctx_, ctx_.inv_raw(v_)); }
    FieldElement pow(std::uint64_t e) const { return FieldElement(ctx_, ctx_.pow_raw(v_, e)); }
    FieldElement frobenius(long i) const {
        return FieldElement(ctx_, ctx_.frobenius_raw(v_, i));
    }

    // Coordinates in the polynomial basis (1, x, ..., x^{N-1}).
    std::vector<std::uint8_t> coords() const {
        std::vector<std::uint8_t> c(ctx_.degree());
        for (unsigned i = 0; i < ctx_.degree(); ++i) c[i] = (v_ >> i) & 1;
        return c;
    }

    bool operator==(const FieldElement& o) const { return ctx_ == o.ctx_ && v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    FieldContext ctx_;
    std::uint64_t v_;
};

inline FieldElement FieldContext::element(std::uint64_t bits) const {
    return FieldElement(*this, bits);
}
inline FieldElement FieldContext::zero() const { return element(0); }
inline FieldElement FieldContext::one() const { return element(1); }
inline FieldElement FieldContext::alpha() const {
    return element(n_ == 1 ? 1 : 2);
}
inline FieldElement FieldContext::alpha_pow(std::uint64_t e) const {
    return alpha().pow(e);
}

}  // namespace rankcrypt
