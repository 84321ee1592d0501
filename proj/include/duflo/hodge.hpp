#ifndef DUFLO_HODGE_HPP
#define DUFLO_HODGE_HPP

// Exterior-algebra model of polyvector fields and forms on a complex torus
// shaped space of dimension n.
//
// Two rank-n spaces: A (basis a_0..a_{n-1}, the H^{0,1} directions) and
// B (basis b_0..b_{n-1}, holomorphic 1-forms) with dual basis b*_j of B*.
//
//   FormClass  in  (wedge A) (x) (wedge B)    bidegree (p, q) = (|A|, |B|)
//   PolyClass  in  (wedge A) (x) (wedge B*)
//   ExtClass   in  (wedge A)                  (Ext*(L, L) for line bundles)
//
// A basis monomial a_S (x) x_T is stored as a pair of bitmasks (S, T) and
// means a_{s1} ^ ... ^ a_{sp} ^ x_{t1} ^ ... ^ x_{tq} with s1 < ... < sp and
// t1 < ... < tq, all generators odd. Wedge is the product of the exterior
// algebra on the 2n generators, so u ^ v = (-1)^{|u||v|} v ^ u on total degree.
//
// Contractions. A monomial a_S b*_T acts on forms as the operator
//   m(a_{s1}) ... m(a_{sp}) i_{t1} ... i_{tq}
// where m is left multiplication and i_t the interior derivation against b_t
// acting from the left: i_t(x ^ y) = i_t(x) ^ y + (-1)^{|x|} x ^ i_t(y).
// The rightmost operator is applied first. Forms act on polyvectors the same
// way with the roles of B and B* exchanged, and the evaluation pairing taken
// graded-symmetric: <b_t, b*_t> = (-1)^{1*1} <b*_t, b_t> = -1. Both actions
// are algebra homomorphisms out of the respective exterior algebras, which is
// the module law (u ^ w) _| alpha = u _| (w _| alpha).

#include <duflo/chern.hpp>
#include <duflo/matrix.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace duflo {

inline constexpr std::size_t kMaxModelDim = 8;

using Mask = std::uint32_t;

class ModelMismatch : public std::invalid_argument {
public:
    ModelMismatch(std::size_t lhs, std::size_t rhs);
};

class BidegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Basis monomial key; ordered by bidegree first, then by masks.
struct BiKey {
    Mask a = 0;
    Mask b = 0;

    [[nodiscard]] int p() const { return std::popcount(a); }
    [[nodiscard]] int q() const { return std::popcount(b); }

    friend bool operator==(const BiKey&, const BiKey&) = default;
    friend bool operator<(const BiKey& x, const BiKey& y)
    {
        return std::tuple(x.p(), x.q(), x.a, x.b) < std::tuple(y.p(), y.q(), y.a, y.b);
    }
};

struct FormTag {};
struct PolyTag {};

/// Finite linear combination of bi-exterior monomials with no stored zeros.
template <typename Tag>
class BiGraded {
public:
    explicit BiGraded(std::size_t n) : n_(n)
    {
        if (n > kMaxModelDim) {
            throw std::invalid_argument("model dimension exceeds " + std::to_string(kMaxModelDim));
        }
    }

    static BiGraded one(std::size_t n) { return monomial(n, 0, 0); }

    /// coeff * a_S (x) x_T for masks S, T.
    static BiGraded monomial(std::size_t n, Mask a, Mask b, const Rational& coeff = 1)
    {
        BiGraded out(n);
        out.add({a, b}, coeff);
        return out;
    }

    /// Same as monomial() with explicit strictly increasing index lists.
    static BiGraded term(std::size_t n, std::initializer_list<std::size_t> a, std::initializer_list<std::size_t> b,
                         const Rational& coeff = 1)
    {
        return monomial(n, mask_of(a), mask_of(b), coeff);
    }

    static Mask mask_of(std::initializer_list<std::size_t> idx)
    {
        Mask m = 0;
        for (auto i : idx) {
            m |= Mask{1} << i;
        }
        return m;
    }

    void add(BiKey key, const Rational& coeff)
    {
        const Mask full = (Mask{1} << n_) - 1;
        if ((key.a & ~full) || (key.b & ~full)) {
            throw std::out_of_range("basis index outside the model dimension");
        }
        if (sgn(coeff) == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(key, coeff);
        if (!inserted) {
            it->second += coeff;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] const std::map<BiKey, Rational>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    [[nodiscard]] Rational coefficient(Mask a, Mask b) const
    {
        auto it = terms_.find({a, b});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] Rational constant_term() const { return coefficient(0, 0); }

    /// The homogeneous (p, q) part.
    [[nodiscard]] BiGraded component(int p, int q) const
    {
        BiGraded out(n_);
        for (const auto& [k, c] : terms_) {
            if (k.p() == p && k.q() == q) {
                out.terms_.emplace(k, c);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<std::pair<int, int>> bidegrees() const
    {
        std::vector<std::pair<int, int>> out;
        for (const auto& [k, c] : terms_) {
            if (out.empty() || out.back() != std::pair{k.p(), k.q()}) {
                out.emplace_back(k.p(), k.q());
            }
        }
        return out;
    }

    [[nodiscard]] bool is_homogeneous(int p, int q) const
    {
        for (const auto& [k, c] : terms_) {
            if (k.p() != p || k.q() != q) {
                return false;
            }
        }
        return true;
    }

    BiGraded& operator+=(const BiGraded& o)
    {
        check_same(o);
        for (const auto& [k, c] : o.terms_) {
            add(k, c);
        }
        return *this;
    }

    BiGraded& operator-=(const BiGraded& o)
    {
        check_same(o);
        for (const auto& [k, c] : o.terms_) {
            add(k, -c);
        }
        return *this;
    }

    BiGraded& operator*=(const Rational& s)
    {
        if (sgn(s) == 0) {
            terms_.clear();
        }
        for (auto& [k, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend BiGraded operator+(BiGraded x, const BiGraded& y) { return x += y; }
    friend BiGraded operator-(BiGraded x, const BiGraded& y) { return x -= y; }
    friend BiGraded operator*(BiGraded x, const Rational& s) { return x *= s; }
    friend BiGraded operator*(const Rational& s, BiGraded x) { return x *= s; }
    friend bool operator==(const BiGraded&, const BiGraded&) = default;

    void check_same(const BiGraded& o) const
    {
        if (o.n_ != n_) {
            throw ModelMismatch(n_, o.n_);
        }
    }

private:
    std::size_t n_;
    std::map<BiKey, Rational> terms_;
};

using FormClass = BiGraded<FormTag>;
using PolyClass = BiGraded<PolyTag>;

/// Element of wedge A, graded by degree.
class ExtClass {
public:
    explicit ExtClass(std::size_t n) : n_(n) {}

    void add(Mask a, const Rational& coeff);
    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] const std::map<std::pair<int, Mask>, Rational>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] Rational coefficient(Mask a) const;
    [[nodiscard]] ExtClass degree_part(int d) const;

    friend bool operator==(const ExtClass&, const ExtClass&) = default;

private:
    std::size_t n_;
    std::map<std::pair<int, Mask>, Rational> terms_; ///< keyed by (degree, mask)
};

// --- sign primitives -------------------------------------------------------------

/// Sign of a_S ^ a_T against a_{S u T} in increasing order; 0 if S, T overlap.
int merge_sign(Mask s, Mask t);

/// (a_S x_T) ^ (a_S' x_T') = sign * a_{S u S'} x_{T u T'}; returns the sign
/// (0 when the product vanishes).
int monomial_product_sign(BiKey lhs, BiKey rhs);

/// Interior derivation against the dual of x_j on a_S x_T: returns the sign
/// and writes the surviving key; sign 0 if j is not in T.
int interior_sign(std::size_t j, BiKey key, BiKey& out);

// --- the model --------------------------------------------------------------------

class InvalidToddDatum : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Degree-by-degree square root of a (p,p)-concentrated class with constant
/// term 1: s_d = (t_d - sum_{0<i<d} s_i s_{d-i}) / 2.
FormClass graded_sqrt(const FormClass& t);
/// u_d = -sum_{0<i<=d} t_i u_{d-i}.
FormClass graded_inverse(const FormClass& t);

class HodgeModel {
public:
    /// Validates that `todd` lives in bidegrees (p, p) with constant term 1.
    HodgeModel(std::size_t n, FormClass todd);

    /// todd = 1, the literal complex torus.
    static HodgeModel torus(std::size_t n);

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] const FormClass& todd() const { return todd_; }
    [[nodiscard]] const FormClass& sqrt_todd() const { return sqrt_todd_; }
    [[nodiscard]] const FormClass& inv_sqrt_todd() const { return inv_sqrt_todd_; }
    /// 2 * (1,1)-part of todd, the first Chern class the datum designates.
    [[nodiscard]] FormClass designated_c1() const;

private:
    std::size_t n_;
    FormClass todd_;
    FormClass sqrt_todd_;
    FormClass inv_sqrt_todd_;
};

/// Substitutes chern[k-1] (a (k,k) class) for c_k of the given family and
/// evaluates the series in the form algebra. Missing classes are zero.
FormClass evaluate_series(const GradedSeries& series, std::size_t n, std::span<const FormClass> chern,
                          const std::string& family = "c");

/// Todd datum Td(c_1, c_2, ...) with the universal Todd polynomial.
FormClass todd_datum(std::size_t n, std::span<const FormClass> chern);

// --- operations --------------------------------------------------------------------

FormClass wedge(const FormClass& u, const FormClass& v);
PolyClass wedge(const PolyClass& u, const PolyClass& v);

/// alpha _| v; bidegree (p,q) on (p',q') lands in (p+p', q'-q).
FormClass contract_T_on_Omega(const PolyClass& alpha, const FormClass& v);
/// v _| alpha; bidegree (p',q') on (p,q) lands in (p+p', q-q').
PolyClass contract_Omega_on_T(const FormClass& v, const PolyClass& alpha);

/// Atiyah class of line-bundle data: the (1,1) class c1 itself.
FormClass atiyah_line(const HodgeModel& model, const FormClass& c1);

/// sum_k v^k / k!; v must have zero constant term.
FormClass exp_form(const FormClass& v);

/// Pairs each (p,k) component of alpha fully against at^k/k! and wedges the
/// A-factors; the result has degree p+k in wedge A.
ExtClass contract_exp_atiyah(const PolyClass& alpha, const FormClass& at);

/// The part of a form with no B-factors, read as an element of wedge A.
ExtClass collapse_to_ext(const FormClass& v);

/// D(alpha) = Td^{1/2} _| alpha.
PolyClass duflo(const HodgeModel& model, const PolyClass& alpha);
/// D^{-1}(alpha) = Td^{-1/2} _| alpha.
PolyClass duflo_inverse(const HodgeModel& model, const PolyClass& alpha);

/// v(L) = exp(c1) ^ Td^{1/2}.
FormClass mukai_line(const HodgeModel& model, const FormClass& c1);

/// All monomials a_S b*_T of the model, in BiKey order.
std::vector<PolyClass> poly_basis(std::size_t n);
std::vector<PolyClass> poly_basis(std::size_t n, int p, int q);
std::vector<FormClass> form_basis(std::size_t n, int p, int q);

/// Basis of {alpha : alpha _| exp(at) = 0}, solved exactly as a kernel over
/// all polyvector monomials.
std::vector<PolyClass> hypothesis_kernel(const HodgeModel& model, const FormClass& c1);

struct TheoremBReport {
    ExtClass h;       ///< alpha _| exp(at_L)
    FormClass m;      ///< D(alpha) _| v(L)
    bool hypothesis;  ///< h == 0
    bool conclusion;  ///< m == 0
    /// False only if the hypothesis holds and the conclusion fails.
    [[nodiscard]] bool implication_holds() const { return !hypothesis || conclusion; }
};

TheoremBReport theorem_b_check(const HodgeModel& model, const PolyClass& alpha, const FormClass& c1);

struct SpecialCaseReport {
    PolyClass duflo_minus_identity; ///< D(alpha) - alpha
    PolyClass quarter_c1_action;    ///< (c1/4) _| alpha
    FormClass h2_component;         ///< (2,0) part of D(alpha) _| Td^{1/2}
    FormClass half_c1_contraction;  ///< alpha _| (c1/2)
    std::vector<Vector> locus_c1;     ///< RREF basis of {alpha : alpha _| c1 = 0}
    std::vector<Vector> locus_mukai;  ///< RREF basis of {alpha : D(alpha) _| v(O) = 0}

    [[nodiscard]] bool difference_identity() const { return duflo_minus_identity == quarter_c1_action; }
    [[nodiscard]] bool h2_identity() const { return h2_component == half_c1_contraction; }
    [[nodiscard]] bool loci_coincide() const { return locus_c1 == locus_mukai; }
    [[nodiscard]] bool all_hold() const { return difference_identity() && h2_identity() && loci_coincide(); }
};

/// alpha must be of bidegree (1,1); c1 is the model's designated_c1(). The
/// loci of (iii) range over all (1,1) polyvectors, in poly_basis(n,1,1) order.
SpecialCaseReport special_case_check(const HodgeModel& model, const PolyClass& alpha);

// --- text and JSON forms -----------------------------------------------------------------

std::string to_string(const FormClass& v);
std::string to_string(const PolyClass& v);
std::string to_string(const ExtClass& v);

/// [{"bidegree": [p, q], "terms": [{"a": [...], "b": [...], "coeff": "p/q"}]}]
/// with 0-based, strictly increasing indices.
std::string to_json(const FormClass& v);
std::string to_json(const PolyClass& v);
FormClass form_from_json(std::size_t n, const std::string& text);
PolyClass poly_from_json(std::size_t n, const std::string& text);

} // namespace duflo

#endif
