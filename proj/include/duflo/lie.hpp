#ifndef DUFLO_LIE_HPP
#define DUFLO_LIE_HPP

#include <duflo/matrix.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace duflo {

class JacobiViolation : public std::invalid_argument {
public:
    JacobiViolation(std::size_t i, std::size_t j, std::size_t k, const std::string& detail);
    std::size_t i, j, k;
};

class AntisymmetryViolation : public std::invalid_argument {
public:
    AntisymmetryViolation(std::size_t i, std::size_t j, std::size_t k, const std::string& detail);
    std::size_t i, j, k;
};

class BracketMismatch : public std::invalid_argument {
public:
    BracketMismatch(std::size_t i, std::size_t j, Matrix bracket_image, Matrix commutator);
    std::size_t i, j;
    Matrix bracket_image; ///< rho([x_i, x_j])
    Matrix commutator;    ///< [rho(x_i), rho(x_j)]
};

/// Structure constants c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k.
using StructureConstants = std::vector<std::vector<Vector>>;

StructureConstants zero_constants(std::size_t dim);

/// A finite-dimensional Lie algebra over Q. Construction validates
/// antisymmetry and the Jacobi identity on every basis triple, so every
/// instance is a genuine Lie algebra.
class LieAlgebra {
public:
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[i][j][k]; }

    /// Coordinates of [x_i, x_j].
    [[nodiscard]] const Vector& bracket(std::size_t i, std::size_t j) const { return c_[i][j]; }
    /// Bracket of arbitrary elements given in coordinates.
    [[nodiscard]] Vector bracket(const Vector& u, const Vector& v) const;

    friend LieAlgebra make_lie_algebra(StructureConstants constants, std::vector<std::string> labels,
                                       std::string name);

private:
    LieAlgebra() = default;

    std::string name_;
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    StructureConstants c_;
};

/// Validates and wraps structure constants. Labels default to x0, x1, ...
LieAlgebra make_lie_algebra(StructureConstants constants, std::vector<std::string> labels = {},
                            std::string name = "custom");

/// A representation rho: g -> gl(V) given by one matrix per basis element.
class Representation {
public:
    [[nodiscard]] const LieAlgebra& algebra() const { return algebra_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Matrix& action(std::size_t i) const { return matrices_[i]; }
    [[nodiscard]] const std::vector<Matrix>& actions() const { return matrices_; }
    /// rho of an element given in coordinates.
    [[nodiscard]] Matrix action(const Vector& x) const;

    friend Representation make_representation(const LieAlgebra& alg, std::vector<Matrix> matrices,
                                               std::string name);

private:
    Representation(LieAlgebra alg) : algebra_(std::move(alg)) {}

    LieAlgebra algebra_;
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<Matrix> matrices_;
};

/// Checks rho([x_i, x_j]) == [rho(x_i), rho(x_j)] for every pair; throws
/// BracketMismatch on the first failing pair.
Representation make_representation(const LieAlgebra& alg, std::vector<Matrix> matrices, std::string name = "custom");

/// ad(x_i)_{kj} = c_{ij}^k.
Representation adjoint_rep(const LieAlgebra& alg);

Representation zero_rep(const LieAlgebra& alg, std::size_t dim);

} // namespace duflo

#endif
