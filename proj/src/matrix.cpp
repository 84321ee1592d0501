#include <duflo/matrix.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace duflo {

namespace {

std::string shape_message(const std::string& op, std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc)
{
    std::ostringstream os;
    os << op << ": dimension mismatch between " << ar << "x" << ac << " and " << br << "x" << bc;
    return os.str();
}

} // namespace

DimensionMismatch::DimensionMismatch(std::string op, std::size_t lr, std::size_t lc, std::size_t rr, std::size_t rc)
    : std::invalid_argument(shape_message(op, lr, lc, rr, rc)), lhs_rows(lr), lhs_cols(lc), rhs_rows(rr), rhs_cols(rc)
{
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("Matrix literal: ragged rows");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionMismatch("from_rows", 1, rows[r].size(), 1, cols);
        }
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Vector Matrix::row(std::size_t r) const
{
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionMismatch("add", rows_, cols_, other.rows_, other.cols_);
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionMismatch("subtract", rows_, cols_, other.rows_, other.cols_);
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s)
{
    for (auto& q : data_) {
        q *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
Matrix operator*(const Rational& s, Matrix a) { return a *= s; }

Matrix mat_mul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("mat_mul", a.rows(), a.cols(), b.rows(), b.cols());
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (sgn(b(k, j)) != 0) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
    }
    return out;
}

Vector apply(const Matrix& m, const Vector& v)
{
    if (m.cols() != v.size()) {
        throw DimensionMismatch("apply", m.rows(), m.cols(), v.size(), 1);
    }
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b)
{
    return mat_mul(a, b) - mat_mul(b, a);
}

RowEchelon row_echelon(const Matrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();

    // Clear denominators row by row; row scaling leaves the row space fixed.
    std::vector<std::vector<Integer>> work(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        }
        for (std::size_t c = 0; c < cols; ++c) {
            work[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
        }
    }

    std::vector<std::size_t> pivots;
    Integer previous = 1;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t found = pr;
        while (found < rows && work[found][c] == 0) {
            ++found;
        }
        if (found == rows) {
            continue;
        }
        std::swap(work[pr], work[found]);
        const Integer& p = work[pr][c];
        for (std::size_t i = pr + 1; i < rows; ++i) {
            const Integer lead = work[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer num = p * work[i][j] - lead * work[pr][j];
                Integer rem;
                mpz_tdiv_qr(work[i][j].get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), previous.get_mpz_t());
                if (rem != 0) {
                    throw std::logic_error("row_echelon: inexact Bareiss division");
                }
            }
            work[i][c] = 0;
        }
        previous = p;
        pivots.push_back(c);
        ++pr;
    }

    Matrix reduced(pivots.size(), cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Integer& p = work[r][pivots[r]];
        for (std::size_t c = 0; c < cols; ++c) {
            reduced(r, c) = Rational(work[r][c], p);
            reduced(r, c).canonicalize();
        }
    }
    for (std::size_t r = pivots.size(); r-- > 0;) {
        const std::size_t pc = pivots[r];
        for (std::size_t above = 0; above < r; ++above) {
            const Rational f = reduced(above, pc);
            if (sgn(f) == 0) {
                continue;
            }
            for (std::size_t c = pc; c < cols; ++c) {
                reduced(above, c) -= f * reduced(r, c);
            }
        }
    }
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m)
{
    return row_echelon(m).pivots.size();
}

std::vector<Vector> kernel(const Matrix& m)
{
    const RowEchelon e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots) {
        is_pivot[p] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            v[e.pivots[r]] = -e.reduced(r, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t dim)
{
    const RowEchelon e = row_echelon(Matrix::from_rows(vectors, dim));
    std::vector<Vector> out;
    out.reserve(e.pivots.size());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        out.push_back(e.reduced.row(r));
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m)
{
    os << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            os << (c ? ", " : "") << m(r, c);
        }
        os << "]";
    }
    return os << "]";
}

} // namespace duflo
