#include "hqft/matrix.hpp"

#include <stdexcept>

namespace hqft {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("from_columns: length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_rows: length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void Matrix::set_column(std::size_t c, const Vec& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

std::size_t Matrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& s : data_)
        if (!s.is_zero()) ++n;
    return n;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o(k, j);
                if (b.is_zero()) continue;
                m(i, j) += a * b;
            }
        }
    return m;
}

Vec Matrix::operator*(const Vec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero() || v[k].is_zero()) continue;
            out[i] += a * v[k];
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= o.data_[i];
    return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix m = *this;
    for (auto& x : m.data_)
        if (!x.is_zero()) x *= s;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::conj_transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
    return m;
}

Matrix Matrix::hstack(const Matrix& right) const {
    if (rows_ != right.rows_) throw std::invalid_argument("hstack: row mismatch");
    Matrix m(rows_, cols_ + right.cols_);
    m.set_block(0, 0, *this);
    m.set_block(0, cols_, right);
    return m;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (cols_ != below.cols_) throw std::invalid_argument("vstack: column mismatch");
    Matrix m(rows_ + below.rows_, cols_);
    m.set_block(0, 0, *this);
    m.set_block(rows_, 0, below);
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw std::out_of_range("set_block");
    for (std::size_t i = 0; i < m.rows_; ++i)
        for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
}

std::vector<std::size_t> Matrix::rref_inplace() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = rows_;
        for (std::size_t i = r; i < rows_; ++i)
            if (!(*this)(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
        Scalar inv = (*this)(r, c).inverse();
        for (std::size_t j = c; j < cols_; ++j)
            if (!(*this)(r, j).is_zero()) (*this)(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            Scalar f = (*this)(i, c);
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < cols_; ++j) {
                const Scalar& x = (*this)(r, j);
                if (!x.is_zero()) (*this)(i, j) -= f * x;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t Matrix::rank() const {
    Matrix m = *this;
    return m.rref_inplace().size();
}

std::vector<Vec> Matrix::nullspace() const {
    Matrix m = *this;
    auto piv = m.rref_inplace();
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_piv[f]) continue;
        Vec v(cols_);
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::size_t> Matrix::independent_columns() const {
    Matrix m = *this;
    return m.rref_inplace();
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
    Matrix bm(rows_, 1);
    bm.set_column(0, b);
    auto x = solve(bm);
    if (!x) return std::nullopt;
    return x->column(0);
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
    if (b.rows_ != rows_) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug = hstack(b);
    Matrix red = aug;
    // eliminate only over the coefficient columns
    std::vector<std::size_t> piv;
    {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if (!red(i, c).is_zero()) {
                    p = i;
                    break;
                }
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < red.cols_; ++j) std::swap(red(p, j), red(r, j));
            Scalar inv = red(r, c).inverse();
            for (std::size_t j = c; j < red.cols_; ++j)
                if (!red(r, j).is_zero()) red(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                Scalar f = red(i, c);
                if (f.is_zero()) continue;
                for (std::size_t j = c; j < red.cols_; ++j)
                    if (!red(r, j).is_zero()) red(i, j) -= f * red(r, j);
            }
            piv.push_back(c);
            ++r;
        }
    }
    for (std::size_t i = piv.size(); i < rows_; ++i)
        for (std::size_t j = cols_; j < red.cols_; ++j)
            if (!red(i, j).is_zero()) return std::nullopt;
    Matrix x(cols_, b.cols_);
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) x(piv[k], j) = red(k, cols_ + j);
    return x;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(const Vec& a, const Scalar& s) {
    Vec r = a;
    for (auto& x : r) x *= s;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

}  // namespace hqft
