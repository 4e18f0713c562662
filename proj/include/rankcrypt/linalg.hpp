#pragma once

// Exact linear algebra over GF(2^N) and GF(2): Gaussian elimination,
// the two rank notions of the rank metric (rank over the extension field
// vs. column rank over the base field), kernels, and random matrix
// generation. First-nonzero pivoting throughout; no tolerances are needed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rankcrypt/field.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

using ExtVector = std::vector<FieldElement>;

inline ExtVector zero_vector(const FieldContext& ctx, std::size_t n) {
    return ExtVector(n, ctx.zero());
}

inline ExtVector operator+(const ExtVector& a, const ExtVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    ExtVector r;
    r.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
    return r;
}

inline ExtVector operator-(const ExtVector& a, const ExtVector& b) { return a + b; }

inline ExtVector operator*(const FieldElement& s, const ExtVector& v) {
    ExtVector r;
    r.reserve(v.size());
    for (const FieldElement& e : v) r.push_back(s * e);
    return r;
}

inline bool is_zero(const ExtVector& v) {
    for (const FieldElement& e : v)
        if (!e.is_zero()) return false;
    return true;
}

// Matrix over GF(2^N), row-major, immutable dimensions.
class ExtMatrix {
public:
    ExtMatrix(const FieldContext& ctx, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), ctx_(ctx), data_(rows * cols, ctx.zero()) {}

    static ExtMatrix identity(const FieldContext& ctx, std::size_t n) {
        ExtMatrix m(ctx, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ctx.one();
        return m;
    }

    static ExtMatrix from_rows(const FieldContext& ctx,
                               const std::vector<ExtVector>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        ExtMatrix m(ctx, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldContext& context() const { return ctx_; }

    FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    ExtVector row(std::size_t r) const {
        ExtVector v;
        v.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v.push_back(at(r, j));
        return v;
    }
    void set_row(std::size_t r, const ExtVector& v) {
        if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) at(r, j) = v[j];
    }

    ExtVector column(std::size_t c) const {
        ExtVector v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, c));
        return v;
    }

    ExtMatrix operator+(const ExtMatrix& o) const {
        require_same_context(ctx_, o.ctx_);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        ExtMatrix r(ctx_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    ExtMatrix operator*(const ExtMatrix& o) const {
        require_same_context(ctx_, o.ctx_);
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        ExtMatrix r(ctx_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FieldElement& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + a * o.at(k, j);
            }
        return r;
    }

    bool operator==(const ExtMatrix& o) const {
        return ctx_ == o.ctx_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_, cols_;
    FieldContext ctx_;
    std::vector<FieldElement> data_;
};

// Matrix over GF(2), entries stored as 0/1 bytes.
class BaseMatrix {
public:
    BaseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static BaseMatrix identity(std::size_t n) {
        BaseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static BaseMatrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        BaseMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j] & 1;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<std::uint8_t> row(std::size_t r) const {
        return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_};
    }

    BaseMatrix operator*(const BaseMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        BaseMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (!at(i, k)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) ^= o.at(k, j);
            }
        return r;
    }

    bool operator==(const BaseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> data_;
};

namespace detail {

// In-place reduced row echelon form over GF(2^N). Pivots are searched in
// columns [0, pivot_cols); trailing columns ride along as augmentation.
// Returns the pivot column indices in order.
inline std::vector<std::size_t> rref_ext(std::vector<ExtVector>& rows,
                                         std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const FieldElement inv = rows[r][c].inverse();
        for (FieldElement& e : rows[r]) e = inv * e;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const FieldElement f = rows[i][c];
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::vector<std::size_t> rref_base(std::vector<std::vector<std::uint8_t>>& rows,
                                          std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && !rows[sel][c]) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || !rows[i][c]) continue;
            for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] ^= rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::vector<ExtVector> matrix_rows(const ExtMatrix& m) {
    std::vector<ExtVector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

inline std::vector<std::vector<std::uint8_t>> matrix_rows(const BaseMatrix& m) {
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

}  // namespace detail

// Rank over the extension field GF(2^N).
inline std::size_t rank_ext(const ExtMatrix& m) {
    auto rows = detail::matrix_rows(m);
    return detail::rref_ext(rows, m.cols()).size();
}

inline std::size_t rank_base(const BaseMatrix& m) {
    auto rows = detail::matrix_rows(m);
    return detail::rref_base(rows, m.cols()).size();
}

// Expand every entry into its N base-field coordinates: column j of the
// result stacks, row by row, the coordinate vectors of column j of m.
inline BaseMatrix base_expansion(const ExtMatrix& m) {
    const unsigned n = m.context().degree();
    BaseMatrix b(m.rows() * n, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const std::uint64_t v = m.at(i, j).value();
            for (unsigned t = 0; t < n; ++t) b.at(i * n + t, j) = (v >> t) & 1;
        }
    return b;
}

// Column rank over the base field GF(2): the maximal number of columns
// linearly independent over GF(2). Never smaller than rank_ext.
inline std::size_t column_rank_base(const ExtMatrix& m) {
    return rank_base(base_expansion(m));
}

// Rank norm of a vector: the maximal number of coordinates linearly
// independent over GF(2).
inline std::size_t rank_norm(const ExtVector& v) {
    if (v.empty()) return 0;
    ExtMatrix m(v.front().context(), 1, v.size());
    m.set_row(0, v);
    return column_rank_base(m);
}

// Basis of { u : M u^T = 0 } over GF(2^N); empty iff M has full column rank.
inline std::vector<ExtVector> right_kernel_ext(const ExtMatrix& m) {
    const FieldContext& ctx = m.context();
    auto rows = detail::matrix_rows(m);
    const auto pivots = detail::rref_ext(rows, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<ExtVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        ExtVector v = zero_vector(ctx, m.cols());
        v[f] = ctx.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x^T = b^T (free variables set to zero), or nullopt.
inline std::optional<ExtVector> solve_right(const ExtMatrix& a, const ExtVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
    const FieldContext& ctx = a.context();
    auto rows = detail::matrix_rows(a);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(b[i]);
    const auto pivots = detail::rref_ext(rows, a.cols());
    for (std::size_t i = pivots.size(); i < rows.size(); ++i)
        if (!rows[i][a.cols()].is_zero()) return std::nullopt;
    ExtVector x = zero_vector(ctx, a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][a.cols()];
    return x;
}

inline std::optional<std::vector<std::uint8_t>> solve_base(
    const BaseMatrix& a, const std::vector<std::uint8_t>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
    auto rows = detail::matrix_rows(a);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(b[i] & 1);
    const auto pivots = detail::rref_base(rows, a.cols());
    for (std::size_t i = pivots.size(); i < rows.size(); ++i)
        if (rows[i][a.cols()]) return std::nullopt;
    std::vector<std::uint8_t> x(a.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][a.cols()];
    return x;
}

inline std::vector<std::vector<std::uint8_t>> right_kernel_base(const BaseMatrix& m) {
    auto rows = detail::matrix_rows(m);
    const auto pivots = detail::rref_base(rows, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint8_t> v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline ExtMatrix transpose(const ExtMatrix& m) {
    ExtMatrix t(m.context(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

inline std::optional<ExtMatrix> inverse_ext(const ExtMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    auto rows = detail::matrix_rows(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows[i].push_back(i == j ? m.context().one() : m.context().zero());
    if (detail::rref_ext(rows, n).size() != n) return std::nullopt;
    ExtMatrix inv(m.context(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rows[i][n + j];
    return inv;
}

inline std::optional<BaseMatrix> base_inverse(const BaseMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    auto rows = detail::matrix_rows(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i].push_back(i == j ? 1 : 0);
    if (detail::rref_base(rows, n).size() != n) return std::nullopt;
    BaseMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rows[i][n + j];
    return inv;
}

// Entrywise Frobenius power sigma^i.
inline ExtMatrix frobenius_matrix(const ExtMatrix& m, long i) {
    ExtMatrix r(m.context(), m.rows(), m.cols());
    for (std::size_t a = 0; a < m.rows(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b) r.at(a, b) = m.at(a, b).frobenius(i);
    return r;
}

inline ExtVector frobenius_vector(const ExtVector& v, long i) {
    ExtVector r;
    r.reserve(v.size());
    for (const FieldElement& e : v) r.push_back(e.frobenius(i));
    return r;
}

inline ExtMatrix hstack(const ExtMatrix& a, const ExtMatrix& b) {
    require_same_context(a.context(), b.context());
    if (a.rows() != b.rows()) throw std::invalid_argument("row count mismatch");
    ExtMatrix r(a.context(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

inline ExtMatrix vstack(const ExtMatrix& a, const ExtMatrix& b) {
    require_same_context(a.context(), b.context());
    if (a.cols() != b.cols()) throw std::invalid_argument("column count mismatch");
    ExtMatrix r(a.context(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

inline ExtMatrix base_to_ext(const BaseMatrix& m, const FieldContext& ctx) {
    ExtMatrix r(ctx, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = ctx.element(m.at(i, j));
    return r;
}

// v * M (row vector times matrix).
inline ExtVector mul_vec_mat(const ExtVector& v, const ExtMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector length mismatch");
    ExtVector r = zero_vector(m.context(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] = r[j] + v[i] * m.at(i, j);
    }
    return r;
}

// v * P for a base-field matrix P.
inline ExtVector mul_vec_base(const ExtVector& v, const BaseMatrix& p) {
    if (v.size() != p.rows()) throw std::invalid_argument("vector length mismatch");
    const FieldContext& ctx = v.front().context();
    ExtVector r = zero_vector(ctx, p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p.at(i, j)) r[j] = r[j] + v[i];
    return r;
}

// P u^T for a base-field matrix P (column-vector product).
inline ExtVector mul_base_vec(const BaseMatrix& p, const ExtVector& u) {
    if (u.size() != p.cols()) throw std::invalid_argument("vector length mismatch");
    const FieldContext& ctx = u.front().context();
    ExtVector r = zero_vector(ctx, p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p.at(i, j)) r[i] = r[i] + u[j];
    return r;
}

// M * P for a base-field column scrambler P.
inline ExtMatrix operator*(const ExtMatrix& m, const BaseMatrix& p) {
    if (m.cols() != p.rows()) throw std::invalid_argument("matrix shape mismatch");
    ExtMatrix r(m.context(), m.rows(), p.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < p.rows(); ++k)
            for (std::size_t j = 0; j < p.cols(); ++j)
                if (p.at(k, j)) r.at(i, j) = r.at(i, j) + m.at(i, k);
    return r;
}

inline ExtMatrix random_matrix_ext(const FieldContext& ctx, std::size_t rows,
                                   std::size_t cols, Rng& rng) {
    ExtMatrix m(ctx, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_element(ctx, rng);
    return m;
}

inline ExtVector random_vector(const FieldContext& ctx, std::size_t n, Rng& rng) {
    ExtVector v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(ctx, rng));
    return v;
}

inline BaseMatrix random_base_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    BaseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rand_bit(rng);
    return m;
}

struct InvertibleBase {
    BaseMatrix mat;
    BaseMatrix inv;
};

// Rejection sampling; over GF(2) fewer than 4 tries are expected.
inline InvertibleBase random_invertible_base(std::size_t size, Rng& rng) {
    if (size < 1) throw std::invalid_argument("matrix size must be positive");
    for (;;) {
        BaseMatrix m = random_base_matrix(size, size, rng);
        if (auto inv = base_inverse(m)) return {std::move(m), std::move(*inv)};
    }
}

inline ExtMatrix random_nonsingular_ext(std::size_t k, Rng& rng, const FieldContext& ctx) {
    if (k < 1) throw std::invalid_argument("matrix size must be positive");
    for (;;) {
        ExtMatrix m = random_matrix_ext(ctx, k, k, rng);
        if (rank_ext(m) == k) return m;
    }
}

// Vector of length n with rank norm exactly r, built as x * Y with
// rank_norm(x) = r over GF(2^N) and Y an r-by-n GF(2) matrix of rank r.
inline ExtVector random_vector_of_rank(std::size_t n, std::size_t r, Rng& rng,
                                       const FieldContext& ctx) {
    if (r > n || r > ctx.degree())
        throw std::invalid_argument("requested rank exceeds vector length or field degree");
    if (r == 0) return zero_vector(ctx, n);

    ExtVector x;
    do {
        x = random_vector(ctx, r, rng);
    } while (rank_norm(x) != r);

    BaseMatrix y(r, n);
    do {
        y = random_base_matrix(r, n, rng);
    } while (rank_base(y) != r);

    return mul_vec_base(x, y);
}

}  // namespace rankcrypt
