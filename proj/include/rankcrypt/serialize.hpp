#pragma once

// JSON serialization. Field elements travel as unsigned integers in
// [0, 2^N-1] (polynomial-basis bits), matrices as arrays of rows. Key and
// ciphertext files embed the parameter block and the generating seed.

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/gpt.hpp"
#include "rankcrypt/linalg.hpp"
#include "rankcrypt/overbeck.hpp"
#include "rankcrypt/params.hpp"

namespace rankcrypt {

using json = nlohmann::json;

inline json to_json(const FieldContext& ctx) {
    return json{{"N", ctx.degree()}, {"primitive_poly", ctx.modulus()}};
}

inline FieldContext context_from_json(const json& j) {
    return FieldContext(j.at("N").get<unsigned>(),
                        j.at("primitive_poly").get<std::uint64_t>());
}

inline json to_json(const ExtVector& v) {
    json a = json::array();
    for (const FieldElement& e : v) a.push_back(e.value());
    return a;
}

inline ExtVector ext_vector_from_json(const json& j, const FieldContext& ctx) {
    ExtVector v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(ctx.element(e.get<std::uint64_t>()));
    return v;
}

inline json to_json(const ExtMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
    return rows;
}

inline ExtMatrix ext_matrix_from_json(const json& j, const FieldContext& ctx) {
    std::vector<ExtVector> rows;
    rows.reserve(j.size());
    for (const auto& r : j) rows.push_back(ext_vector_from_json(r, ctx));
    return ExtMatrix::from_rows(ctx, rows);
}

inline json to_json(const BaseMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline BaseMatrix base_matrix_from_json(const json& j) {
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(j.size());
    for (const auto& r : j) {
        std::vector<std::uint8_t> row;
        row.reserve(r.size());
        for (const auto& b : r) row.push_back(b.get<int>() & 1);
        rows.push_back(std::move(row));
    }
    return BaseMatrix::from_rows(rows);
}

// {N, primitive_poly, n, k, g}; the generator and parity matrices are
// derived on load, never stored.
inline json to_json(const GabidulinCode& code) {
    return json{{"N", code.context().degree()},
                {"primitive_poly", code.context().modulus()},
                {"n", code.length()},
                {"k", code.dimension()},
                {"g", to_json(code.support())}};
}

inline GabidulinCode code_from_json(const json& j) {
    FieldContext ctx(j.at("N").get<unsigned>(), j.at("primitive_poly").get<std::uint64_t>());
    return GabidulinCode(ctx, j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(),
                         ext_vector_from_json(j.at("g"), ctx));
}

inline json to_json(const GptParams& p) {
    return json{{"N", p.N},
                {"primitive_poly", p.primitive_poly},
                {"n", p.n},
                {"k", p.k},
                {"t1", p.t1},
                {"a", p.a},
                {"t2_max", p.t2_max},
                {"x_mode", to_string(p.x_mode)}};
}

inline GptParams params_from_json(const json& j) {
    GptParams p;
    p.N = j.at("N").get<unsigned>();
    p.primitive_poly = j.at("primitive_poly").get<std::uint64_t>();
    p.n = j.at("n").get<std::size_t>();
    p.k = j.at("k").get<std::size_t>();
    p.t1 = j.at("t1").get<std::size_t>();
    p.a = j.at("a").get<std::size_t>();
    p.t2_max = j.at("t2_max").get<std::size_t>();
    p.x_mode = x_mode_from_string(j.at("x_mode").get<std::string>());
    return p;
}

inline json bit_rows_to_json(const std::vector<std::vector<std::uint8_t>>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (auto b : r) row.push_back(int(b));
        a.push_back(std::move(row));
    }
    return a;
}

inline std::vector<std::vector<std::uint8_t>> bit_rows_from_json(const json& j) {
    std::vector<std::vector<std::uint8_t>> rows;
    for (const auto& r : j) {
        std::vector<std::uint8_t> row;
        for (const auto& b : r) row.push_back(b.get<int>() & 1);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const SmartXRecord& rec) {
    json j;
    j["mode"] = to_string(mode_of(rec));
    if (const auto* r = std::get_if<SimpleXRecord>(&rec)) {
        j["m"] = to_json(r->m);
        j["s"] = bit_rows_to_json(r->s);
    } else if (const auto* r = std::get_if<GeneralXRecord>(&rec)) {
        j["seeds"] = to_json(r->seeds);
        json cols = json::array();
        for (const auto& c : r->columns) cols.push_back(to_json(c));
        j["columns"] = std::move(cols);
        j["mix"] = bit_rows_to_json(r->mix);
    } else if (const auto* r = std::get_if<KshevetskiyXRecord>(&rec)) {
        j["left"] = to_json(r->left);
        j["right"] = to_json(r->right);
    } else {
        j["x"] = to_json(std::get<NaiveXRecord>(rec).x);
    }
    return j;
}

inline SmartXRecord x_record_from_json(const json& j, const FieldContext& ctx) {
    const XMode mode = x_mode_from_string(j.at("mode").get<std::string>());
    switch (mode) {
        case XMode::smart_simple:
            return SimpleXRecord{ext_vector_from_json(j.at("m"), ctx),
                                 bit_rows_from_json(j.at("s"))};
        case XMode::smart_general: {
            std::vector<ExtVector> cols;
            for (const auto& c : j.at("columns")) cols.push_back(ext_vector_from_json(c, ctx));
            return GeneralXRecord{ext_vector_from_json(j.at("seeds"), ctx), std::move(cols),
                                  bit_rows_from_json(j.at("mix"))};
        }
        case XMode::kshevetskiy:
            return KshevetskiyXRecord{ext_matrix_from_json(j.at("left"), ctx),
                                      ext_matrix_from_json(j.at("right"), ctx)};
        case XMode::random_naive:
            return NaiveXRecord{ext_matrix_from_json(j.at("x"), ctx)};
    }
    throw std::invalid_argument("unknown x record mode");
}

inline json to_json(const GptPublicKey& pub) {
    return json{{"params", to_json(pub.params)},
                {"seed", pub.seed},
                {"g_pub", to_json(pub.g_pub)}};
}

inline GptPublicKey public_key_from_json(const json& j) {
    const GptParams params = params_from_json(j.at("params"));
    params.validate();
    const FieldContext ctx = params.context();
    GptPublicKey pub{params, ext_matrix_from_json(j.at("g_pub"), ctx),
                     j.at("seed").get<std::uint64_t>()};
    if (pub.g_pub.rows() != params.k || pub.g_pub.cols() != params.n + params.t1)
        throw std::invalid_argument("public key matrix shape mismatch");
    return pub;
}

inline json to_json(const GptPrivateKey& priv) {
    json j{{"params", to_json(priv.params)},
           {"seed", priv.seed},
           {"g", to_json(priv.code.support())},
           {"S", to_json(priv.s)},
           {"P", to_json(priv.p)}};
    if (priv.x_record) j["x_record"] = to_json(*priv.x_record);
    return j;
}

inline GptPrivateKey private_key_from_json(const json& j) {
    const GptParams params = params_from_json(j.at("params"));
    params.validate();
    const FieldContext ctx = params.context();
    GabidulinCode code(ctx, params.n, params.k, ext_vector_from_json(j.at("g"), ctx));
    ExtMatrix s = ext_matrix_from_json(j.at("S"), ctx);
    auto s_inv = inverse_ext(s);
    if (!s_inv) throw std::invalid_argument("row scrambler S is singular");
    BaseMatrix p = base_matrix_from_json(j.at("P"));
    auto p_inv = base_inverse(p);
    if (!p_inv) throw std::invalid_argument("column scrambler P is singular");

    std::optional<SmartXRecord> record;
    std::optional<ExtMatrix> x;
    if (j.contains("x_record")) {
        record = x_record_from_json(j.at("x_record"), ctx);
        x = assemble_x(ctx, params.k, *record);
    }
    return GptPrivateKey{params,       std::move(code),   std::move(s),
                         std::move(*s_inv), std::move(p),  std::move(*p_inv),
                         std::move(x), std::move(record), j.at("seed").get<std::uint64_t>()};
}

inline json to_json(const SecurityReport& r) {
    return json{{"rk_y_ext", r.rk_y_ext},
                {"a_effective", r.a_effective},
                {"kernel_dim", r.kernel_dim},
                {"work_factor_log2", r.work_factor_log2},
                {"secure", r.secure},
                {"params", to_json(r.params)},
                {"seed", r.seed}};
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open for reading: " + path);
    return json::parse(in);
}

}  // namespace rankcrypt
