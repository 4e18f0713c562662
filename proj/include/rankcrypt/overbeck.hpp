#pragma once

// The structural-attack analyzer: the T mapping that kills Frobenius-type
// columns, Frobenius extension stacks, rank measurement of Y_ext, the
// kernel distinguisher on the extended public key, and the work-factor
// estimate. Everything here runs on public data except verify_break_parts,
// which is a test harness for confirmed breaks.

#include <cmath>
#include <cstddef>
#include <vector>

#include "rankcrypt/linalg.hpp"
#include "rankcrypt/params.hpp"

namespace rankcrypt {

// Attacks become infeasible once the residual search space reaches
// q^{aN} with aN >= 60.
inline constexpr double kSecureExponentBits = 60.0;

// T(X) = sigma(X minus last row) - (X minus first row). GF(2)-linear; a
// Frobenius-type column (w, w^{[1]}, ..., w^{[k-1]})^T maps to zero.
inline ExtMatrix t_map(const ExtMatrix& x) {
    if (x.rows() < 2) throw std::invalid_argument("t_map requires at least 2 rows");
    ExtMatrix y(x.context(), x.rows() - 1, x.cols());
    for (std::size_t i = 0; i + 1 < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            y.at(i, j) = x.at(i, j).frobenius(1) - x.at(i + 1, j);
    return y;
}

// Vertical stack of sigma^i(M) for i = 0..u.
inline ExtMatrix extend_matrix(const ExtMatrix& m, std::size_t u) {
    ExtMatrix r(m.context(), m.rows() * (u + 1), m.cols());
    for (std::size_t i = 0; i <= u; ++i) {
        ExtMatrix block = frobenius_matrix(m, static_cast<long>(i));
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b)
                r.at(i * m.rows() + a, b) = block.at(a, b);
    }
    return r;
}

// Vertical stack of sigma^i(Y) for i = 0..u-1 (u blocks).
inline ExtMatrix y_ext(const ExtMatrix& y, std::size_t u) {
    if (u < 1) throw std::invalid_argument("y_ext requires u >= 1");
    return extend_matrix(y, u - 1);
}

struct SecurityReport {
    std::size_t rk_y_ext = 0;
    std::size_t a_effective = 0;       // t1 - rk_y_ext
    std::size_t kernel_dim = 0;        // right kernel of G_ext_pub
    double work_factor_log2 = 0.0;     // a_effective*N + 3*log2(n+t1)
    bool secure = false;               // a_effective*N >= 60
    GptParams params;
    std::uint64_t seed = 0;
};

inline double work_factor_log2(std::size_t a_effective, const GptParams& p) {
    return static_cast<double>(a_effective) * p.N +
           3.0 * std::log2(static_cast<double>(p.n + p.t1));
}

// Audit of a distortion matrix X against the extended-rank condition.
// kernel_dim is derived from the rank identity
//   dim ker(G_ext_pub) = t1 + 1 - rk(Y_ext);
// distinguisher() measures the same dimension from public data alone.
inline SecurityReport security_report_for_x(const ExtMatrix& x, const GptParams& params,
                                            std::uint64_t seed = 0) {
    if (params.k < 2) throw std::invalid_argument("security analysis requires k >= 2");
    if (x.rows() != params.k || x.cols() != params.t1)
        throw std::invalid_argument("distortion matrix shape mismatch");
    SecurityReport r;
    r.params = params;
    r.seed = seed;
    const ExtMatrix y = t_map(x);
    // u = 0 (k = n-1) leaves no Y_ext blocks at all; the extended key is
    // just G_pub and its kernel has dimension t1+1 regardless of X.
    r.rk_y_ext = params.overbeck_u() == 0 ? 0 : rank_ext(y_ext(y, params.overbeck_u()));
    r.a_effective = params.t1 - r.rk_y_ext;
    r.kernel_dim = params.t1 + 1 - r.rk_y_ext;
    r.work_factor_log2 = work_factor_log2(r.a_effective, params);
    r.secure = static_cast<double>(r.a_effective) * params.N >= kSecureExponentBits;
    return r;
}

struct DistinguisherResult {
    std::vector<ExtVector> kernel_basis;
    bool attack_feasible = false;     // kernel dimension == 1
    double search_space_log2 = 0.0;   // log2 of candidate y-vectors when infeasible
};

// Kernel distinguisher on the extended public key G_ext_pub built from
// sigma^0..sigma^u images of G_pub. Dimension 1 hands the attacker the
// unique candidate vector; dimension a+1 forces a q^{aN} search.
inline DistinguisherResult distinguisher(const ExtMatrix& g_pub, std::size_t u) {
    DistinguisherResult r;
    r.kernel_basis = right_kernel_ext(extend_matrix(g_pub, u));
    r.attack_feasible = r.kernel_basis.size() == 1;
    r.search_space_log2 = r.kernel_basis.empty()
                              ? 0.0
                              : static_cast<double>((r.kernel_basis.size() - 1) *
                                                    g_pub.context().degree());
    return r;
}

// Private-data check that a kernel vector actually breaks the key:
// P u^T must split as [y | h]^T with y = 0 on the first t1 coordinates
// and h orthogonal to the (n-1)-row Moore matrix of the code support g.
inline bool verify_break_parts(const ExtVector& g, const BaseMatrix& p, std::size_t t1,
                               const ExtVector& u) {
    if (u.size() != p.rows()) throw std::invalid_argument("kernel vector length mismatch");
    if (is_zero(u)) throw std::invalid_argument("kernel vector must be nonzero");
    const ExtVector w = mul_base_vec(p, u);
    for (std::size_t i = 0; i < t1; ++i)
        if (!w[i].is_zero()) return false;
    const std::size_t n = g.size();
    const FieldContext& ctx = g.front().context();
    ExtVector h(w.begin() + static_cast<std::ptrdiff_t>(t1), w.end());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        FieldElement acc = ctx.zero();
        for (std::size_t j = 0; j < n; ++j)
            acc = acc + g[j].frobenius(static_cast<long>(i)) * h[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace rankcrypt
