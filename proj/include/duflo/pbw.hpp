#ifndef DUFLO_PBW_HPP
#define DUFLO_PBW_HPP

#include <duflo/lie.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace duflo {

/// Default cap on tensor and symmetric degree.
inline constexpr std::size_t kDefaultDegreeCap = 4;

/// A word x_{i1} (x) ... (x) x_{ik} in the tensor algebra, as basis indices.
using Word = std::vector<std::size_t>;

/// Element of T(g): finitely many words with nonzero rational coefficients,
/// each of length at most max_degree().
class TensorElement {
public:
    explicit TensorElement(std::size_t max_degree = kDefaultDegreeCap) : max_degree_(max_degree) {}

    static TensorElement word(Word w, std::size_t max_degree = kDefaultDegreeCap);

    /// Adds coeff * w; drops the entry if it cancels. Throws std::length_error
    /// when w is longer than max_degree().
    void add(const Word& w, const Rational& coeff);

    [[nodiscard]] const std::map<Word, Rational>& terms() const { return terms_; }
    [[nodiscard]] std::size_t max_degree() const { return max_degree_; }
    [[nodiscard]] std::size_t degree() const;
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] Rational coefficient(const Word& w) const;

    TensorElement& operator+=(const TensorElement& other);
    TensorElement& operator-=(const TensorElement& other);
    TensorElement& operator*=(const Rational& s);

    /// Concatenation product of T(g).
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }

private:
    std::size_t max_degree_;
    std::map<Word, Rational> terms_;
};

inline TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
inline TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

/// Commutative monomial in S(g): a multiset of basis indices, kept sorted.
class SymMonomial {
public:
    SymMonomial() = default;
    explicit SymMonomial(std::vector<std::size_t> indices);

    [[nodiscard]] const std::vector<std::size_t>& indices() const { return indices_; }
    [[nodiscard]] std::size_t degree() const { return indices_.size(); }

    friend auto operator<=>(const SymMonomial&, const SymMonomial&) = default;

private:
    std::vector<std::size_t> indices_;
};

class SymElement {
public:
    SymElement() = default;
    SymElement(const SymMonomial& m, const Rational& coeff = 1);

    void add(const SymMonomial& m, const Rational& coeff);
    [[nodiscard]] const std::map<SymMonomial, Rational>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t degree() const;

    SymElement& operator+=(const SymElement& other);
    SymElement& operator*=(const Rational& s);
    friend bool operator==(const SymElement&, const SymElement&) = default;

private:
    std::map<SymMonomial, Rational> terms_;
};

/// All sorted multisets of size `degree` over {0..dim-1}, ascending.
std::vector<SymMonomial> sym_monomials(std::size_t dim, std::size_t degree);
/// All words of length `length` over {0..dim-1}, lexicographic.
std::vector<Word> all_words(std::size_t dim, std::size_t length);

/// x_1 ... x_n -> (1/n!) sum over S_n of x_s(1) (x) ... (x) x_s(n). Every one
/// of the n! position permutations is enumerated, then equal words merge.
TensorElement symmetrize(const SymMonomial& m, std::size_t max_degree = kDefaultDegreeCap);
TensorElement symmetrize(const SymElement& s, std::size_t max_degree = kDefaultDegreeCap);

/// T(g) -> U(g) -> End(V): the word (i1, ..., ik) goes to
/// rho(x_i1) * ... * rho(x_ik); the empty word goes to the identity.
Matrix theta(const Representation& rep, const TensorElement& t);

/// The action reshaped as Lambda: V -> V (x) g*, stored as entry(out, in, g).
/// Contracting the g*-slot with x_g gives back rho(x_g).
class LambdaMap {
public:
    explicit LambdaMap(const Representation& rep);

    [[nodiscard]] std::size_t dim_v() const { return dim_v_; }
    [[nodiscard]] std::size_t dim_g() const { return dim_g_; }
    [[nodiscard]] const Rational& entry(std::size_t out, std::size_t in, std::size_t g) const
    {
        return data_[(out * dim_v_ + in) * dim_g_ + g];
    }

    /// Pairs the g*-slot with x = sum_g x[g] x_g.
    [[nodiscard]] Matrix contract(const Vector& x) const;

private:
    std::size_t dim_v_;
    std::size_t dim_g_;
    std::vector<Rational> data_;
};

/// Lambda composed with itself k times, V -> V (x) (g*)^{(x)k}, for
/// k = 0..max_degree. Entry (w, out, in) is the coefficient of
/// e_out (x) x*_{w1} (x) ... (x) x*_{wk} in Lambda^k(e_in). The Lambda applied
/// first to the input pairs with the last slot of w.
class LambdaTower {
public:
    LambdaTower(const LambdaMap& lambda, std::size_t max_degree);

    [[nodiscard]] std::size_t max_degree() const { return levels_.size() - 1; }
    [[nodiscard]] std::size_t dim_v() const { return dim_v_; }
    /// The V -> V block of Lambda^k paired with the word w (k = w.size()).
    [[nodiscard]] const Matrix& pairing(const Word& w) const;

private:
    std::size_t dim_v_;
    std::size_t dim_g_;
    std::vector<std::vector<Matrix>> levels_;
};

/// T(g) -> End(V) by contracting Lambda^k with words of length k.
Matrix phi(const LambdaTower& tower, const TensorElement& t);
Matrix phi(const Representation& rep, const TensorElement& t);

/// S(g) -> End(V): contract exp(Lambda) with S(g), realized as phi o symmetrize.
Matrix s_to_hom(const LambdaTower& tower, const SymElement& s);
Matrix s_to_hom(const Representation& rep, const SymElement& s);

/// ad(x_i) extended to S(g) as a derivation.
SymElement apply_derivation(const LieAlgebra& alg, std::size_t i, const SymElement& s);

/// Basis of (S^d g)^g: the joint kernel of all derivations ad(x_i) on S^d g.
/// Every returned element is re-checked by apply_derivation.
std::vector<SymElement> invariants_s(const LieAlgebra& alg, std::size_t degree);

struct LieDiagramReport {
    bool agree = false;
    Matrix path_a;     ///< theta(symmetrize(s))
    Matrix path_b;     ///< s_to_hom(s)
    Matrix difference; ///< path_a - path_b
    bool invariant = false;
    /// Set when s is g-invariant: whether path_b commutes with every rho(x_i).
    std::optional<bool> central;
};

LieDiagramReport check_lie_diagram(const Representation& rep, const SymElement& s,
                                   std::size_t max_degree = kDefaultDegreeCap);
LieDiagramReport check_lie_diagram(const Representation& rep, const LambdaTower& tower, const SymElement& s);

struct AdjunctionReport {
    bool holds = true;
    std::vector<Matrix> contracted; ///< Lambda paired with x_i
    std::vector<std::size_t> failing;
};

/// For every basis x_i: Lambda followed by contraction with x_i equals rho(x_i).
AdjunctionReport adjunction_check(const Representation& rep);

/// theta(x_i x_j - x_j x_i) == theta([x_i, x_j]) for every pair.
bool enveloping_relation_holds(const Representation& rep);

std::string to_string(const SymElement& s, const std::vector<std::string>& labels);
std::string to_string(const TensorElement& t, const std::vector<std::string>& labels);

} // namespace duflo

#endif
