#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hqft/scalar.hpp"

namespace hqft {

using Vec = std::vector<Scalar>;

// Dense matrix over Q(i). Maps R^cols -> R^rows acting on column vectors.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec column(std::size_t c) const;
    Vec row(std::size_t r) const;
    void set_column(std::size_t c, const Vec& v);

    bool is_zero() const;
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;
    Matrix conj_transpose() const;

    // Block helpers.
    Matrix hstack(const Matrix& right) const;
    Matrix vstack(const Matrix& below) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
    Matrix select_columns(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;

    std::size_t rank() const;
    // Reduced row echelon form in place; returns pivot columns in increasing order.
    std::vector<std::size_t> rref_inplace();
    // Basis of the kernel: one vector per free column, with 1 at that column.
    std::vector<Vec> nullspace() const;
    // Indices of a maximal independent subset of columns (greedy left to right).
    std::vector<std::size_t> independent_columns() const;
    // Solve A x = b; nullopt if inconsistent. Free variables are set to zero.
    std::optional<Vec> solve(const Vec& b) const;
    std::optional<Matrix> solve(const Matrix& b) const;

    std::size_t nonzeros() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Scalar& s);
bool vec_is_zero(const Vec& a);
Vec unit_vec(std::size_t n, std::size_t i);

}  // namespace hqft
