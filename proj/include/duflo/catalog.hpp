#ifndef DUFLO_CATALOG_HPP
#define DUFLO_CATALOG_HPP

#include <duflo/lie.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace duflo {

/// Malformed or schema-violating external input (JSON files, names).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

LieAlgebra abelian(std::size_t n);
/// Basis (x, y, z) with [x, y] = z.
LieAlgebra heisenberg3();
/// Basis (e, f, h) with [h, e] = 2e, [h, f] = -2f, [e, f] = h.
LieAlgebra sl2();
/// Basis (E11, E12, E21, E22) of 2x2 matrix units.
LieAlgebra gl2();

/// Irreducible sl2-module of dimension m + 1 in the weight basis v_0..v_m:
/// h v_k = (m - 2k) v_k, f v_k = v_{k+1}, e v_k = k (m - k + 1) v_{k-1}.
Representation sl2_irrep(std::size_t dim);

/// k-th symmetric power, basis ordered as sorted multisets of V-indices.
Representation symmetric_power(const Representation& rep, std::size_t k);
Representation direct_sum(const Representation& a, const Representation& b);
/// P rho(x) P^{-1}
Representation conjugate(const Representation& rep, const Matrix& p, const Matrix& p_inverse);

/// Names accepted: abelian<n>, heisenberg3, sl2, gl2. Throws InputError.
LieAlgebra catalog_algebra(const std::string& name);

std::vector<std::string> catalog_algebra_names();

/// All bundled representations of a catalog algebra, each of dimension <= 5.
/// Algebras outside the catalog get the zero and adjoint representations.
std::vector<Representation> catalog_representations(const LieAlgebra& alg);

/// Looks up one bundled representation by name. Throws InputError.
Representation catalog_representation(const LieAlgebra& alg, const std::string& rep_name);

/// {"dim": n, "labels": [...], "brackets": [{"i": .., "j": .., "coeffs": ["p/q", ...]}]}
/// Pairs that are not listed are zero; a pair listed in one order only is
/// completed by antisymmetry. Validation errors from make_lie_algebra
/// propagate unchanged.
LieAlgebra lie_algebra_from_json(const std::string& text, const std::string& name = "custom");
LieAlgebra load_lie_algebra(const std::string& path);

/// {"name": "...", "matrices": [[["p/q", ...], ...], ...]}
Representation representation_from_json(const LieAlgebra& alg, const std::string& text);

std::string lie_algebra_to_json(const LieAlgebra& alg);

} // namespace duflo

#endif
