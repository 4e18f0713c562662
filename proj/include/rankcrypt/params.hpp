#pragma once

// GPT cryptosystem parameter set and its validity rules.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "rankcrypt/field.hpp"

namespace rankcrypt {

// Strategy for the distortion matrix X. The two smart modes and the
// kshevetskiy mode are designed to leave the extended analysis matrix
// rank-deficient; random_naive is the insecure baseline used to
// demonstrate the kernel distinguisher.
enum class XMode { smart_simple, smart_general, kshevetskiy, random_naive };

inline std::string to_string(XMode m) {
    switch (m) {
        case XMode::smart_simple: return "smart_simple";
        case XMode::smart_general: return "smart_general";
        case XMode::kshevetskiy: return "kshevetskiy";
        case XMode::random_naive: return "random_naive";
    }
    throw std::invalid_argument("unknown x mode");
}

inline XMode x_mode_from_string(const std::string& s) {
    if (s == "smart_simple") return XMode::smart_simple;
    if (s == "smart_general") return XMode::smart_general;
    if (s == "kshevetskiy") return XMode::kshevetskiy;
    if (s == "random_naive") return XMode::random_naive;
    throw std::invalid_argument("unknown x mode: " + s);
}

struct GptParams {
    unsigned N = 8;
    std::uint64_t primitive_poly = FieldContext::default_primitive_poly(8);
    std::size_t n = 8;
    std::size_t k = 4;
    std::size_t t1 = 4;       // distortion width
    std::size_t a = 2;        // designed rank deficiency
    std::size_t t2_max = 2;   // sender error budget
    XMode x_mode = XMode::smart_simple;

    static GptParams with_defaults(unsigned N, std::size_t n, std::size_t k,
                                   std::size_t t1, std::size_t a, std::size_t t2_max,
                                   XMode mode) {
        GptParams p;
        p.N = N;
        p.primitive_poly = FieldContext::default_primitive_poly(N);
        p.n = n;
        p.k = k;
        p.t1 = t1;
        p.a = a;
        p.t2_max = t2_max;
        p.x_mode = mode;
        return p;
    }

    FieldContext context() const { return FieldContext(N, primitive_poly); }

    std::size_t correction_radius() const { return (n - k) / 2; }
    std::size_t overbeck_u() const { return n - k - 1; }
    // Rank of X over the extension field prescribed by the kshevetskiy mode.
    std::size_t kshevetskiy_rank() const { return (t1 - a) / (n - k); }

    std::size_t public_key_size_bits() const { return k * (t1 + n) * N; }
    double information_rate() const {
        return static_cast<double>(k) / static_cast<double>(t1 + n);
    }

    void validate() const {
        FieldContext ctx = context();  // validates N and the polynomial
        if (k < 1 || k >= n || n > ctx.degree())
            throw std::invalid_argument("parameters must satisfy 1 <= k < n <= N");
        if (t1 < 1) throw std::invalid_argument("t1 must be at least 1");
        if (a < 2 || a > t1) throw std::invalid_argument("a must satisfy 2 <= a <= t1");
        if (t2_max > correction_radius())
            throw std::invalid_argument("t2_max exceeds the correction radius (n-k)/2");
        switch (x_mode) {
            case XMode::smart_simple:
                if (t1 > N)
                    throw std::invalid_argument("smart_simple requires t1 <= N");
                if (k - 1 < t1 - a)
                    throw std::invalid_argument("smart_simple requires k-1 >= t1-a");
                break;
            case XMode::kshevetskiy:
                if (t1 <= n - k)
                    throw std::invalid_argument("kshevetskiy requires t1 > n-k");
                if (kshevetskiy_rank() < 1 || kshevetskiy_rank() > k)
                    throw std::invalid_argument(
                        "kshevetskiy requires 1 <= floor((t1-a)/(n-k)) <= k");
                break;
            case XMode::smart_general:
            case XMode::random_naive:
                break;
        }
    }

    bool operator==(const GptParams&) const = default;
};

}  // namespace rankcrypt
