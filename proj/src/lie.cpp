#include <duflo/lie.hpp>

#include <sstream>

namespace duflo {

namespace {

std::string triple_message(const char* what, std::size_t i, std::size_t j, std::size_t k, const std::string& detail)
{
    std::ostringstream os;
    os << what << " at (" << i << ", " << j << ", " << k << ")";
    if (!detail.empty()) {
        os << ": " << detail;
    }
    return os.str();
}

std::string mismatch_message(std::size_t i, std::size_t j, const Matrix& lhs, const Matrix& rhs)
{
    std::ostringstream os;
    os << "BracketMismatch at pair (" << i << ", " << j << "): rho([x_i, x_j]) = " << lhs
       << " but [rho(x_i), rho(x_j)] = " << rhs;
    return os.str();
}

} // namespace

JacobiViolation::JacobiViolation(std::size_t i_, std::size_t j_, std::size_t k_, const std::string& detail)
    : std::invalid_argument(triple_message("JacobiViolation", i_, j_, k_, detail)), i(i_), j(j_), k(k_)
{
}

AntisymmetryViolation::AntisymmetryViolation(std::size_t i_, std::size_t j_, std::size_t k_,
                                             const std::string& detail)
    : std::invalid_argument(triple_message("AntisymmetryViolation", i_, j_, k_, detail)), i(i_), j(j_), k(k_)
{
}

BracketMismatch::BracketMismatch(std::size_t i_, std::size_t j_, Matrix lhs, Matrix rhs)
    : std::invalid_argument(mismatch_message(i_, j_, lhs, rhs)), i(i_), j(j_), bracket_image(std::move(lhs)),
      commutator(std::move(rhs))
{
}

StructureConstants zero_constants(std::size_t dim)
{
    return StructureConstants(dim, std::vector<Vector>(dim, Vector(dim)));
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const
{
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(u[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            if (sgn(v[j]) == 0) {
                continue;
            }
            const Rational w = u[i] * v[j];
            for (std::size_t k = 0; k < dim_; ++k) {
                out[k] += w * c_[i][j][k];
            }
        }
    }
    return out;
}

LieAlgebra make_lie_algebra(StructureConstants constants, std::vector<std::string> labels, std::string name)
{
    const std::size_t n = constants.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (constants[i].size() != n) {
            throw std::invalid_argument("structure constants must be indexed over dim^3");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (constants[i][j].size() != n) {
                throw std::invalid_argument("structure constants must be indexed over dim^3");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (constants[i][j][k] != -constants[j][i][k]) {
                    std::ostringstream os;
                    os << "c[" << i << "][" << j << "][" << k << "] = " << constants[i][j][k] << " but c[" << j
                       << "][" << i << "][" << k << "] = " << constants[j][i][k];
                    throw AntisymmetryViolation(i, j, k, os.str());
                }
            }
        }
    }

    LieAlgebra alg;
    alg.name_ = std::move(name);
    alg.dim_ = n;
    alg.c_ = std::move(constants);
    if (labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("x" + std::to_string(i));
        }
    }
    if (labels.size() != n) {
        throw std::invalid_argument("label count does not match dimension");
    }
    alg.labels_ = std::move(labels);

    // [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0
    auto basis = [n](std::size_t i) {
        Vector e(n);
        e[i] = 1;
        return e;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector sum = alg.bracket(basis(i), alg.c_[j][k]);
                const Vector t2 = alg.bracket(basis(j), alg.c_[k][i]);
                const Vector t3 = alg.bracket(basis(k), alg.c_[i][j]);
                bool zero = true;
                for (std::size_t m = 0; m < n; ++m) {
                    sum[m] += t2[m] + t3[m];
                    zero = zero && sgn(sum[m]) == 0;
                }
                if (!zero) {
                    std::ostringstream os;
                    os << "Jacobiator of (" << alg.labels_[i] << ", " << alg.labels_[j] << ", " << alg.labels_[k]
                       << ") is nonzero";
                    throw JacobiViolation(i, j, k, os.str());
                }
            }
        }
    }
    return alg;
}

Matrix Representation::action(const Vector& x) const
{
    Matrix out(dim_, dim_);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) != 0) {
            out += matrices_[i] * x[i];
        }
    }
    return out;
}

Representation make_representation(const LieAlgebra& alg, std::vector<Matrix> matrices, std::string name)
{
    if (matrices.size() != alg.dim()) {
        throw std::invalid_argument("representation needs one matrix per basis element");
    }
    const std::size_t d = matrices.empty() ? 0 : matrices.front().rows();
    for (const auto& m : matrices) {
        if (m.rows() != d || m.cols() != d) {
            throw DimensionMismatch("make_representation", m.rows(), m.cols(), d, d);
        }
    }
    Representation rep(alg);
    rep.dim_ = d;
    rep.name_ = std::move(name);
    rep.matrices_ = std::move(matrices);
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        for (std::size_t j = i + 1; j < alg.dim(); ++j) {
            Matrix lhs = rep.action(alg.bracket(i, j));
            Matrix rhs = commutator(rep.matrices_[i], rep.matrices_[j]);
            if (lhs != rhs) {
                throw BracketMismatch(i, j, std::move(lhs), std::move(rhs));
            }
        }
    }
    return rep;
}

Representation adjoint_rep(const LieAlgebra& alg)
{
    const std::size_t n = alg.dim();
    std::vector<Matrix> ads(n, Matrix(n, n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                ads[i](k, j) = alg.constant(i, j, k);
            }
        }
    }
    return make_representation(alg, std::move(ads), "adjoint");
}

Representation zero_rep(const LieAlgebra& alg, std::size_t dim)
{
    return make_representation(alg, std::vector<Matrix>(alg.dim(), Matrix(dim, dim)), "zero");
}

} // namespace duflo
