#pragma once

// Gabidulin MRD codes: Moore-matrix generator and parity check, encoding,
// and syndrome decoding of rank errors up to t = floor((n-k)/2).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rankcrypt/linalg.hpp"

namespace rankcrypt {

class DecodingFailure : public std::runtime_error {
public:
    explicit DecodingFailure(const std::string& what) : std::runtime_error(what) {}
};

// rows x n matrix whose i-th row is sigma^i(v).
inline ExtMatrix moore_matrix(const ExtVector& v, std::size_t rows) {
    if (v.empty()) throw std::invalid_argument("moore matrix of empty vector");
    ExtMatrix m(v.front().context(), rows, v.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m.at(i, j) = v[j].frobenius(static_cast<long>(i));
    return m;
}

class GabidulinCode {
public:
    // Builds the code from an explicit support vector g with rank norm n.
    GabidulinCode(const FieldContext& ctx, std::size_t n, std::size_t k, ExtVector g)
        : ctx_(ctx),
          n_(n),
          k_(k),
          g_(std::move(g)),
          gen_(ctx, 1, 1),
          par_(ctx, 1, 1),
          h_(zero_vector(ctx, n)) {
        if (k_ < 1 || k_ >= n_ || n_ > ctx_.degree())
            throw std::invalid_argument("code dimensions must satisfy 1 <= k < n <= N");
        if (g_.size() != n_) throw std::invalid_argument("support vector length mismatch");
        for (const FieldElement& e : g_) require_same_context(ctx_, e.context());
        if (rank_norm(g_) != n_)
            throw std::invalid_argument("support vector must have rank norm n");
        gen_ = moore_matrix(g_, k_);
        h_ = compute_dual();
        par_ = moore_matrix(h_, n_ - k_);
    }

    static GabidulinCode random(const FieldContext& ctx, std::size_t n, std::size_t k,
                                Rng& rng) {
        if (n > ctx.degree()) throw std::invalid_argument("code length exceeds field degree");
        ExtVector g;
        do {
            g = random_vector(ctx, n, rng);
        } while (rank_norm(g) != n);
        return GabidulinCode(ctx, n, k, std::move(g));
    }

    const FieldContext& context() const { return ctx_; }
    std::size_t length() const { return n_; }
    std::size_t dimension() const { return k_; }
    std::size_t distance() const { return n_ - k_ + 1; }
    std::size_t correction_radius() const { return (n_ - k_) / 2; }
    const ExtVector& support() const { return g_; }
    const ExtMatrix& generator_matrix() const { return gen_; }
    const ExtMatrix& parity_matrix() const { return par_; }
    const ExtVector& dual_vector() const { return h_; }

    ExtVector encode(const ExtVector& m) const {
        if (m.size() != k_) throw std::invalid_argument("message length mismatch");
        return mul_vec_mat(m, gen_);
    }

    // s_j = sum_i y_i * h_i^{[j]}, j = 0..d-2.
    ExtVector syndromes(const ExtVector& y) const {
        if (y.size() != n_) throw std::invalid_argument("received word length mismatch");
        ExtVector s;
        s.reserve(n_ - k_);
        for (std::size_t j = 0; j < n_ - k_; ++j) {
            FieldElement acc = ctx_.zero();
            for (std::size_t i = 0; i < n_; ++i) acc = acc + y[i] * par_.at(j, i);
            s.push_back(acc);
        }
        return s;
    }

    struct Decoded {
        ExtVector message;
        ExtVector error;
    };

    // Unique decoding within the radius t. Throws DecodingFailure when no
    // codeword lies within rank distance t of y.
    Decoded decode(const ExtVector& y) const {
        if (y.size() != n_) throw std::invalid_argument("received word length mismatch");
        const ExtVector s = syndromes(y);
        if (is_zero(s)) {
            auto m = solve_message(y);
            if (!m) throw DecodingFailure("zero syndrome but word is not a codeword");
            return {*m, zero_vector(ctx_, n_)};
        }
        for (std::size_t m_try = correction_radius(); m_try >= 1; --m_try) {
            if (auto dec = try_decode_rank(y, s, m_try)) return *dec;
        }
        throw DecodingFailure("no codeword within the correction radius");
    }

private:
    // h solves the n-1 orthogonality conditions h . sigma^j(g') = 0 with
    // g' = sigma^{-(n-k-1)}(g); the kernel is one-dimensional.
    ExtVector compute_dual() const {
        const long shift = -static_cast<long>(n_ - k_ - 1);
        ExtMatrix constraints = moore_matrix(frobenius_vector(g_, shift), n_ - 1);
        auto basis = right_kernel_ext(constraints);
        if (basis.size() != 1)
            throw std::logic_error("dual construction: kernel is not one-dimensional");
        ExtVector h = basis.front();
        if (rank_norm(h) != n_)
            throw std::logic_error("dual construction: h does not have rank norm n");
        ExtMatrix hk = moore_matrix(h, n_ - k_);
        ExtMatrix prod = moore_matrix(g_, k_) * transpose(hk);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < n_ - k_; ++j)
                if (!prod.at(i, j).is_zero())
                    throw std::logic_error("dual construction: G H^T != 0");
        return h;
    }

    std::optional<ExtVector> solve_message(const ExtVector& c) const {
        return solve_right(transpose(gen_), c);
    }

    // One pass of syndrome decoding at trial error rank m_try. Any candidate
    // that survives the final checks is the unique answer, so failures at
    // intermediate steps just fall through to a smaller trial rank.
    std::optional<Decoded> try_decode_rank(const ExtVector& y, const ExtVector& s,
                                           std::size_t m_try) const {
        const std::size_t d1 = n_ - k_;  // number of syndromes

        // Key equation: sum_{i=0}^{m} L_i s_{j-i}^{[i]} = 0 for j = m..d1-1,
        // normalized with L_m = 1.
        ExtMatrix a(ctx_, d1 - m_try, m_try);
        ExtVector b;
        b.reserve(d1 - m_try);
        for (std::size_t j = m_try; j < d1; ++j) {
            for (std::size_t i = 0; i < m_try; ++i)
                a.at(j - m_try, i) = s[j - i].frobenius(static_cast<long>(i));
            b.push_back(s[j - m_try].frobenius(static_cast<long>(m_try)));
        }
        auto lambda = solve_right(a, b);
        if (!lambda) return std::nullopt;

        // Root space of the linearized polynomial L(x) = x^{q^m} + sum L_i x^{q^i},
        // found as the GF(2)-kernel of its N x N coordinate matrix.
        const unsigned nn = ctx_.degree();
        BaseMatrix lmap(nn, nn);
        for (unsigned col = 0; col < nn; ++col) {
            FieldElement basis_el = ctx_.element(std::uint64_t{1} << col);
            FieldElement image = basis_el.frobenius(static_cast<long>(m_try));
            for (std::size_t i = 0; i < m_try; ++i)
                image = image + (*lambda)[i] * basis_el.frobenius(static_cast<long>(i));
            const std::uint64_t v = image.value();
            for (unsigned row = 0; row < nn; ++row) lmap.at(row, col) = (v >> row) & 1;
        }
        const auto roots = right_kernel_base(lmap);
        if (roots.empty() || roots.size() > m_try) return std::nullopt;
        ExtVector error_values;
        error_values.reserve(roots.size());
        for (const auto& bits : roots) {
            std::uint64_t v = 0;
            for (unsigned t = 0; t < nn; ++t) v |= std::uint64_t{bits[t]} << t;
            error_values.push_back(ctx_.element(v));
        }

        // s_j = sum_p E_p z_p^{[j]}; applying sigma^{-j} row-wise makes the
        // system linear in the z_p.
        const std::size_t kappa = error_values.size();
        ExtMatrix a2(ctx_, d1, kappa);
        ExtVector b2;
        b2.reserve(d1);
        for (std::size_t j = 0; j < d1; ++j) {
            for (std::size_t p = 0; p < kappa; ++p)
                a2.at(j, p) = error_values[p].frobenius(-static_cast<long>(j));
            b2.push_back(s[j].frobenius(-static_cast<long>(j)));
        }
        auto z = solve_right(a2, b2);
        if (!z) return std::nullopt;

        // Each z_p must expand over the h basis with GF(2) coordinates.
        BaseMatrix hcoords(nn, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint64_t v = h_[i].value();
            for (unsigned t = 0; t < nn; ++t) hcoords.at(t, i) = (v >> t) & 1;
        }
        std::vector<std::vector<std::uint8_t>> locator_rows;
        for (std::size_t p = 0; p < kappa; ++p) {
            std::vector<std::uint8_t> zc((*z)[p].coords());
            auto yrow = solve_base(hcoords, zc);
            if (!yrow) return std::nullopt;
            locator_rows.push_back(std::move(*yrow));
        }

        ExtVector e = zero_vector(ctx_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t p = 0; p < kappa; ++p)
                if (locator_rows[p][i]) e[i] = e[i] + error_values[p];
        if (rank_norm(e) > correction_radius()) return std::nullopt;

        auto m = solve_message(y - e);
        if (!m) return std::nullopt;
        return Decoded{*m, e};
    }

    FieldContext ctx_;
    std::size_t n_, k_;
    ExtVector g_;
    ExtMatrix gen_;
    ExtMatrix par_;
    ExtVector h_;
};

}  // namespace rankcrypt
