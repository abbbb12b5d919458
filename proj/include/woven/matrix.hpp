#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

// Dense row-major matrix of doubles.  Everything in this library lives at
// desk scale (dimensions well under a hundred), so the design optimizes for
// clarity and determinism, not BLAS throughput: value semantics, no views,
// no expression templates.  All entries are required to be finite; the
// factory functions and parsers enforce this so downstream kernels never see
// NaN or Inf.

namespace woven {

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    // Zero-initialized rows x cols matrix.  Either extent may be zero; a
    // 0-column matrix is the natural encoding of "no perturbation
    // coefficients" for frames without excess.
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    // Throws ShapeError on ragged rows, ValueError on non-finite entries.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<double>& v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(double s) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    bool operator==(const Matrix& rhs) const = default;

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

// -- small vector helpers used throughout ------------------------------------

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);  // Euclidean norm

}  // namespace woven
