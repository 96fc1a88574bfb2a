#ifndef QUADSPIN_MATRIX_HPP
#define QUADSPIN_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "quadspin/fields.hpp"

namespace quadspin {

// Dense exact matrix over Rat or Fp. Values are immutable in spirit: all
// operations return new matrices. A field exemplar is kept so that empty
// shapes (0xN kernels and the like) still know their field.
template <ScalarField K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const K& like)
        : rows_(rows), cols_(cols), proto_(zero_like(like)), a_(rows * cols, zero_like(like)) {}

    static Matrix zeros(std::size_t rows, std::size_t cols, const K& like) {
        return Matrix(rows, cols, like);
    }
    static Matrix identity(std::size_t n, const K& like) {
        Matrix m(n, n, like);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one_like(like);
        return m;
    }
    static Matrix of(std::size_t rows, std::size_t cols, std::vector<K> entries) {
        if (entries.size() != rows * cols) throw OperationalError("Matrix::of: bad entry count");
        Matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.proto_ = zero_like(entries.empty() ? K{} : entries.front());
        m.a_ = std::move(entries);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const K& proto() const { return proto_; }

    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!(x.a_[i] == y.a_[i])) return false;
        return true;
    }

    bool is_zero_matrix() const {
        for (const K& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, proto_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        x.same_shape(y);
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        x.same_shape(y);
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw OperationalError("Matrix: shape mismatch in product");
        Matrix r(x.rows_, y.cols_, x.proto_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const K& xik = x.at(i, k);
                if (is_zero(xik)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + xik * y.at(k, j);
            }
        return r;
    }
    Matrix scaled(const K& c) const {
        Matrix r = *this;
        for (K& x : r.a_) x = x * c;
        return r;
    }
    Matrix negated() const {
        Matrix r = *this;
        for (K& x : r.a_) x = zero_like(proto_) - x;
        return r;
    }

    Matrix row(std::size_t i) const { return submatrix(i, 0, 1, cols_); }
    Matrix col(std::size_t j) const { return submatrix(0, j, rows_, 1); }
    Matrix submatrix(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        Matrix r(nr, nc, proto_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(i0 + i, j0 + j);
        return r;
    }
    static Matrix hstack(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_) throw OperationalError("hstack: row mismatch");
        Matrix r(x.rows_, x.cols_ + y.cols_, x.proto_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t j = 0; j < x.cols_; ++j) r.at(i, j) = x.at(i, j);
            for (std::size_t j = 0; j < y.cols_; ++j) r.at(i, x.cols_ + j) = y.at(i, j);
        }
        return r;
    }
    static Matrix vstack(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.cols_) throw OperationalError("vstack: col mismatch");
        Matrix r(x.rows_ + y.rows_, x.cols_, x.proto_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j) r.at(i, j) = x.at(i, j);
        for (std::size_t i = 0; i < y.rows_; ++i)
            for (std::size_t j = 0; j < y.cols_; ++j) r.at(x.rows_ + i, j) = y.at(i, j);
        return r;
    }

    struct Echelon {
        Matrix reduced;                   // fully reduced row echelon form
        std::vector<std::size_t> pivots;  // pivot column per nonzero row
        std::size_t rank{0};
    };

    // Reduced row echelon form by exact Gauss-Jordan. Pivoting is "first
    // nonzero", so the result is deterministic.
    Echelon rref() const {
        Matrix m = *this;
        Echelon e{Matrix(0, 0, proto_), {}, 0};
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if (!is_zero(m.at(i, c))) {
                    piv = i;
                    break;
                }
            if (piv == rows_) continue;
            if (piv != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
            const K s = inv_of(m.at(r, c));
            for (std::size_t j = c; j < cols_; ++j) m.at(r, j) = m.at(r, j) * s;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || is_zero(m.at(i, c))) continue;
                const K f = m.at(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    m.at(i, j) = m.at(i, j) - f * m.at(r, j);
            }
            e.pivots.push_back(c);
            ++r;
        }
        e.rank = r;
        e.reduced = std::move(m);
        return e;
    }

    std::size_t rank() const;
    K det() const;

    // Columns span the kernel; count is cols() - rank().
    Matrix kernel_basis() const {
        Echelon e = rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : e.pivots) is_pivot[c] = true;
        Matrix ker(cols_, cols_ - e.rank, proto_);
        std::size_t out = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            ker.at(c, out) = one_like(proto_);
            for (std::size_t r = 0; r < e.rank; ++r)
                ker.at(e.pivots[r], out) = zero_like(proto_) - e.reduced.at(r, c);
            ++out;
        }
        return ker;
    }

    // Solves this * X = rhs column-wise; nullopt when inconsistent.
    std::optional<Matrix> solve(const Matrix& rhs) const {
        if (rhs.rows_ != rows_) throw OperationalError("solve: shape mismatch");
        Echelon e = hstack(*this, rhs).rref();
        Matrix x(cols_, rhs.cols_, proto_);
        for (std::size_t r = 0; r < e.rank; ++r) {
            const std::size_t c = e.pivots[r];
            if (c >= cols_) return std::nullopt;  // pivot in the rhs block
            for (std::size_t j = 0; j < rhs.cols_; ++j) x.at(c, j) = e.reduced.at(r, cols_ + j);
        }
        return x;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_) throw OperationalError("inverse: not square");
        auto x = solve(identity(rows_, proto_));
        if (!x || ((*x) * (*this)) != identity(rows_, proto_)) return std::nullopt;
        return x;
    }

private:
    void same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw OperationalError("Matrix: shape mismatch");
    }

    std::size_t rows_{0}, cols_{0};
    K proto_{};
    std::vector<K> a_;
};

namespace detail {

// Bareiss fraction-free elimination on an integer matrix. Returns the rank;
// when det_out is non-null the matrix must be square and the determinant is
// stored there.
std::size_t bareiss(std::vector<std::vector<mpz_class>>& m, mpz_class* det_out);

}  // namespace detail

// Rank: fraction-free over Q (denominators cleared row-wise, then Bareiss);
// plain elimination over F_p.
template <ScalarField K>
std::size_t Matrix<K>::rank() const {
    if constexpr (std::is_same_v<K, Rat>) {
        std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
        for (std::size_t i = 0; i < rows_; ++i) {
            mpz_class l(1);
            for (std::size_t j = 0; j < cols_; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), at(i, j).get_den().get_mpz_t());
            for (std::size_t j = 0; j < cols_; ++j) {
                Rat scaled = at(i, j) * Rat(l);
                m[i][j] = scaled.get_num();
            }
        }
        return detail::bareiss(m, nullptr);
    } else {
        return rref().rank;
    }
}

template <ScalarField K>
K Matrix<K>::det() const {
    if (rows_ != cols_) throw OperationalError("det: not square");
    if (rows_ == 0) return one_like(proto_);
    if constexpr (std::is_same_v<K, Rat>) {
        std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
        Rat scale(1);
        for (std::size_t i = 0; i < rows_; ++i) {
            mpz_class l(1);
            for (std::size_t j = 0; j < cols_; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), at(i, j).get_den().get_mpz_t());
            scale *= Rat(l);
            for (std::size_t j = 0; j < cols_; ++j) {
                Rat s = at(i, j) * Rat(l);
                m[i][j] = s.get_num();
            }
        }
        mpz_class d;
        detail::bareiss(m, &d);
        return Rat(d) / scale;
    } else {
        Matrix m = *this;
        K d = one_like(proto_);
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t piv = rows_;
            for (std::size_t i = c; i < rows_; ++i)
                if (!is_zero(m.at(i, c))) {
                    piv = i;
                    break;
                }
            if (piv == rows_) return zero_like(proto_);
            if (piv != c) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(c, j));
                d = zero_like(proto_) - d;
            }
            d = d * m.at(c, c);
            const K s = inv_of(m.at(c, c));
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (is_zero(m.at(i, c))) continue;
                const K f = m.at(i, c) * s;
                for (std::size_t j = c; j < cols_; ++j)
                    m.at(i, j) = m.at(i, j) - f * m.at(c, j);
            }
        }
        return d;
    }
}

// Incremental column span with exact membership tests; used where many
// candidate columns stream past one echelon.
template <ScalarField K>
class IncrementalSpan {
public:
    IncrementalSpan(std::size_t dim, const K& like) : dim_(dim), proto_(zero_like(like)) {}

    // true iff the column enlarged the span
    bool insert(Matrix<K> col) {
        reduce(col);
        std::size_t pr = dim_;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!is_zero(col.at(i, 0))) {
                pr = i;
                break;
            }
        if (pr == dim_) return false;
        col = col.scaled(inv_of(col.at(pr, 0)));
        pivots_.emplace_back(pr, std::move(col));
        return true;
    }

    bool contains(Matrix<K> col) const {
        reduce(col);
        return col.is_zero_matrix();
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    void reduce(Matrix<K>& col) const {
        for (const auto& [pr, pc] : pivots_) {
            const K f = col.at(pr, 0);
            if (is_zero(f)) continue;
            for (std::size_t i = 0; i < dim_; ++i) col.at(i, 0) = col.at(i, 0) - f * pc.at(i, 0);
        }
    }

    std::size_t dim_;
    K proto_;
    std::vector<std::pair<std::size_t, Matrix<K>>> pivots_;
};

// ---------------------------------------------------------------------------
// Subspace utilities on column spans.
// ---------------------------------------------------------------------------

// dim(colspan(a) ∩ colspan(b)) = rank a + rank b - rank [a | b].
template <ScalarField K>
std::size_t colspan_meet_dim(const Matrix<K>& a, const Matrix<K>& b) {
    return a.rank() + b.rank() - Matrix<K>::hstack(a, b).rank();
}

template <ScalarField K>
bool colspan_contains(const Matrix<K>& big, const Matrix<K>& small) {
    return Matrix<K>::hstack(big, small).rank() == big.rank();
}

template <ScalarField K>
bool colspan_equal(const Matrix<K>& a, const Matrix<K>& b) {
    const std::size_t ra = a.rank(), rb = b.rank();
    return ra == rb && Matrix<K>::hstack(a, b).rank() == ra;
}

// Basis (as columns) of colspan(a) ∩ colspan(b).
template <ScalarField K>
Matrix<K> colspan_meet(const Matrix<K>& a, const Matrix<K>& b) {
    Matrix<K> both = Matrix<K>::hstack(a, b.negated());
    Matrix<K> ker = both.kernel_basis();
    Matrix<K> coeff = ker.submatrix(0, 0, a.cols(), ker.cols());
    Matrix<K> vecs = a * coeff;
    // prune to an independent spanning set
    auto e = vecs.transpose().rref();
    Matrix<K> out(a.rows(), e.rank, a.proto());
    for (std::size_t r = 0; r < e.rank; ++r)
        for (std::size_t i = 0; i < a.rows(); ++i) out.at(i, r) = e.reduced.at(r, i);
    return out;
}

// Solutions x of  a*x ∈ colspan(b), returned as a column basis.
template <ScalarField K>
Matrix<K> preimage_of_colspan(const Matrix<K>& a, const Matrix<K>& b) {
    Matrix<K> both = Matrix<K>::hstack(a, b);
    Matrix<K> ker = both.kernel_basis();
    Matrix<K> xs = ker.submatrix(0, 0, a.cols(), ker.cols());
    auto e = xs.transpose().rref();
    Matrix<K> out(a.cols(), e.rank, a.proto());
    for (std::size_t r = 0; r < e.rank; ++r)
        for (std::size_t i = 0; i < a.cols(); ++i) out.at(i, r) = e.reduced.at(r, i);
    return out;
}

}  // namespace quadspin

#endif
