#ifndef DUFLO_MATRIX_HPP
#define DUFLO_MATRIX_HPP

#include <duflo/rational.hpp>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace duflo {

using Vector = std::vector<Rational>;

class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(std::string op, std::size_t lhs_rows, std::size_t lhs_cols, std::size_t rhs_rows,
                      std::size_t rhs_cols);

    std::size_t lhs_rows, lhs_cols, rhs_rows, rhs_cols;
};

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// Row-list literal; all rows must have equal length.
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }
    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] Vector row(std::size_t r) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(const Rational& s);

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, const Rational& s);
Matrix operator*(const Rational& s, Matrix a);

/// Exact product. Throws DimensionMismatch unless a.cols() == b.rows().
Matrix mat_mul(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Vector apply(const Matrix& m, const Vector& v);

/// a*b - b*a
Matrix commutator(const Matrix& a, const Matrix& b);

/// Result of fraction-free elimination: the reduced row echelon form and
/// the pivot column of each nonzero row.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Elimination runs fraction-free on integer
/// rescaled rows (Bareiss); the pivot for each column is the first row,
/// in order, with a nonzero entry there.
RowEchelon row_echelon(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of the right nullspace. One vector per free column f, with a 1 in
/// position f and 0 in the other free positions.
std::vector<Vector> kernel(const Matrix& m);

/// Canonical basis (RREF rows) of the span of the given vectors.
std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t dim);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

} // namespace duflo

#endif
