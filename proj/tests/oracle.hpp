#pragma once

// Test-only brute-force oracles. These deliberately avoid the library's
// decoding path: decoding is checked against exhaustive nearest-codeword
// search over every message of a tiny code.

#include <optional>
#include <utility>

#include "rankcrypt/gabidulin.hpp"

namespace rankcrypt::oracle {

inline ExtVector index_to_message(const GabidulinCode& code, std::uint64_t idx) {
    const FieldContext& ctx = code.context();
    const std::uint64_t q = ctx.field_size();
    ExtVector m;
    for (std::size_t i = 0; i < code.dimension(); ++i) {
        m.push_back(ctx.element(idx % q));
        idx /= q;
    }
    return m;
}

inline std::uint64_t codeword_count(const GabidulinCode& code) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < code.dimension(); ++i) total *= code.context().field_size();
    return total;
}

// The unique codeword within rank distance t of y, if any.
inline std::optional<std::pair<ExtVector, ExtVector>> nearest_codeword(
    const GabidulinCode& code, const ExtVector& y) {
    const std::uint64_t total = codeword_count(code);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        ExtVector m = index_to_message(code, idx);
        ExtVector c = code.encode(m);
        if (rank_norm(y - c) <= code.correction_radius()) return std::pair{m, y - c};
    }
    return std::nullopt;
}

}  // namespace rankcrypt::oracle
