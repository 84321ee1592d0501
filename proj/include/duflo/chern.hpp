#ifndef DUFLO_CHERN_HPP
#define DUFLO_CHERN_HPP

#include <duflo/rational.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace duflo {

inline constexpr unsigned kDefaultTruncation = 6;

/// A graded variable: Chern class c_k of some family (weight k), or a
/// formal Chern root (weight 1).
struct ChernVar {
    std::string family;
    unsigned index = 0;
    unsigned weight = 0;

    static ChernVar chern(std::string family, unsigned k) { return {std::move(family), k, k}; }
    static ChernVar root(std::string family, unsigned i) { return {std::move(family), i, 1}; }

    [[nodiscard]] std::string name() const { return family + std::to_string(index); }

    friend bool operator==(const ChernVar& x, const ChernVar& y)
    {
        return x.family == y.family && x.index == y.index;
    }
    friend auto operator<=>(const ChernVar& x, const ChernVar& y)
    {
        if (auto c = x.family <=> y.family; c != 0) {
            return c;
        }
        return x.index <=> y.index;
    }
};

/// Commutative monomial: sorted multiset of variables. Ordered by weight,
/// then lexicographically.
class ChernMonomial {
public:
    ChernMonomial() = default;
    explicit ChernMonomial(std::vector<ChernVar> vars);

    [[nodiscard]] const std::vector<ChernVar>& vars() const { return vars_; }
    [[nodiscard]] unsigned weight() const { return weight_; }
    [[nodiscard]] std::string to_string() const;

    friend ChernMonomial operator*(const ChernMonomial& a, const ChernMonomial& b);
    friend bool operator==(const ChernMonomial& a, const ChernMonomial& b) { return a.vars_ == b.vars_; }
    friend bool operator<(const ChernMonomial& a, const ChernMonomial& b);

private:
    std::vector<ChernVar> vars_;
    unsigned weight_ = 0;
};

class NonUnitConstant : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Polynomial in graded variables truncated above weight N.
class GradedSeries {
public:
    explicit GradedSeries(unsigned truncation = kDefaultTruncation) : truncation_(truncation) {}

    static GradedSeries constant(const Rational& c, unsigned truncation = kDefaultTruncation);
    static GradedSeries variable(const ChernVar& v, unsigned truncation = kDefaultTruncation);

    /// Terms above the truncation weight are dropped.
    void add(const ChernMonomial& m, const Rational& coeff);

    [[nodiscard]] unsigned truncation() const { return truncation_; }
    [[nodiscard]] const std::map<ChernMonomial, Rational>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] Rational constant_term() const;
    [[nodiscard]] Rational coefficient(const ChernMonomial& m) const;
    /// The homogeneous weight-d part.
    [[nodiscard]] GradedSeries weight_part(unsigned d) const;
    [[nodiscard]] GradedSeries truncated(unsigned n) const;

    GradedSeries& operator+=(const GradedSeries& o);
    GradedSeries& operator-=(const GradedSeries& o);
    GradedSeries& operator*=(const Rational& s);

    friend bool operator==(const GradedSeries& a, const GradedSeries& b) { return a.terms_ == b.terms_; }

private:
    unsigned truncation_;
    std::map<ChernMonomial, Rational> terms_;
};

GradedSeries operator+(GradedSeries a, const GradedSeries& b);
GradedSeries operator-(GradedSeries a, const GradedSeries& b);
GradedSeries operator*(GradedSeries a, const Rational& s);

/// Truncated product at min of the two truncations.
GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);
inline GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) { return series_mul(a, b); }

/// Weight-by-weight square root; requires constant term 1.
GradedSeries series_sqrt(const GradedSeries& a);
/// Weight-by-weight inverse; requires constant term 1.
GradedSeries series_inv(const GradedSeries& a);
/// sum_k a^k / k!; requires zero constant term.
GradedSeries series_exp(const GradedSeries& a);

/// Replaces each listed variable by a series; unlisted variables stay.
GradedSeries substitute(const GradedSeries& s, const std::map<ChernVar, GradedSeries>& values, unsigned truncation);

/// Power sums p_0..p_N of the Chern roots of a bundle of the given rank, in
/// terms of its Chern classes (c_k = 0 for k > rank); entry k is p_k, p_0 = rank.
/// Newton's identities:
/// p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k.
std::vector<GradedSeries> power_sums(unsigned rank, unsigned truncation, const std::string& family = "c");

/// Coefficients of the univariate series t / (1 - e^{-t}) up to t^N.
std::vector<Rational> todd_generator(unsigned truncation);

/// Universal Todd class: prod_i Q(x_i) for Q(t) = t/(1 - e^{-t}), written
/// as exp(sum_k l_k p_k) with l_k the coefficients of log Q.
GradedSeries todd(unsigned truncation = kDefaultTruncation, const std::string& family = "c");

/// rank + sum_k p_k / k!
GradedSeries chern_character(unsigned rank, unsigned truncation = kDefaultTruncation,
                             const std::string& family = "c");

/// ch(F) * Td(X)^{1/2}; bundle classes use family "f", tangent classes "c".
GradedSeries mukai_vector(unsigned rank, unsigned truncation = kDefaultTruncation);

/// Canonical text: "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2".
std::string to_string(const GradedSeries& s);
std::string to_json(const GradedSeries& s);

} // namespace duflo

#endif
