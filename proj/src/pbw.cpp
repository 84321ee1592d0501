#include <duflo/pbw.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace duflo {

// --- TensorElement -------------------------------------------------------

TensorElement TensorElement::word(Word w, std::size_t max_degree)
{
    TensorElement t(std::max(max_degree, w.size()));
    t.add(w, 1);
    return t;
}

void TensorElement::add(const Word& w, const Rational& coeff)
{
    if (w.size() > max_degree_) {
        throw std::length_error("TensorElement: word of length " + std::to_string(w.size()) +
                                " exceeds max degree " + std::to_string(max_degree_));
    }
    if (sgn(coeff) == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) {
            terms_.erase(it);
        }
    }
}

std::size_t TensorElement::degree() const
{
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) {
        d = std::max(d, w.size());
    }
    return d;
}

Rational TensorElement::coefficient(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

TensorElement& TensorElement::operator+=(const TensorElement& other)
{
    max_degree_ = std::max(max_degree_, other.max_degree_);
    for (const auto& [w, c] : other.terms_) {
        add(w, c);
    }
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other)
{
    max_degree_ = std::max(max_degree_, other.max_degree_);
    for (const auto& [w, c] : other.terms_) {
        add(w, -c);
    }
    return *this;
}

TensorElement& TensorElement::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) {
        c *= s;
    }
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b)
{
    TensorElement out(a.max_degree_ + b.max_degree_);
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add(w, ca * cb);
        }
    }
    return out;
}

// --- SymMonomial / SymElement ---------------------------------------------

SymMonomial::SymMonomial(std::vector<std::size_t> indices) : indices_(std::move(indices))
{
    std::sort(indices_.begin(), indices_.end());
}

SymElement::SymElement(const SymMonomial& m, const Rational& coeff)
{
    add(m, coeff);
}

void SymElement::add(const SymMonomial& m, const Rational& coeff)
{
    if (sgn(coeff) == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) {
            terms_.erase(it);
        }
    }
}

std::size_t SymElement::degree() const
{
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, m.degree());
    }
    return d;
}

SymElement& SymElement::operator+=(const SymElement& other)
{
    for (const auto& [m, c] : other.terms_) {
        add(m, c);
    }
    return *this;
}

SymElement& SymElement::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) {
        c *= s;
    }
    return *this;
}

std::vector<SymMonomial> sym_monomials(std::size_t dim, std::size_t degree)
{
    std::vector<SymMonomial> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == degree) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t i = start; i < dim; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<Word> all_words(std::size_t dim, std::size_t length)
{
    std::vector<Word> out;
    if (dim == 0 && length > 0) {
        return out;
    }
    Word w(length, 0);
    while (true) {
        out.push_back(w);
        std::size_t pos = length;
        while (pos > 0 && ++w[pos - 1] == dim) {
            w[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) {
            break;
        }
    }
    return out;
}

// --- symmetrization ---------------------------------------------------------

TensorElement symmetrize(const SymMonomial& m, std::size_t max_degree)
{
    const std::size_t n = m.degree();
    TensorElement out(max_degree);
    const Rational weight = 1 / factorial(static_cast<unsigned>(n));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Word w(n);
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = m.indices()[perm[k]];
        }
        out.add(w, weight);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

TensorElement symmetrize(const SymElement& s, std::size_t max_degree)
{
    TensorElement out(max_degree);
    for (const auto& [m, c] : s.terms()) {
        TensorElement t = symmetrize(m, max_degree);
        t *= c;
        out += t;
    }
    return out;
}

// --- theta -------------------------------------------------------------------

Matrix theta(const Representation& rep, const TensorElement& t)
{
    Matrix out(rep.dim(), rep.dim());
    for (const auto& [w, c] : t.terms()) {
        Matrix prod = Matrix::identity(rep.dim());
        for (std::size_t letter : w) {
            prod = mat_mul(prod, rep.action(letter));
        }
        out += prod * c;
    }
    return out;
}

// --- Lambda ------------------------------------------------------------------

LambdaMap::LambdaMap(const Representation& rep)
    : dim_v_(rep.dim()), dim_g_(rep.algebra().dim()), data_(dim_v_ * dim_v_ * dim_g_)
{
    for (std::size_t g = 0; g < dim_g_; ++g) {
        const Matrix& a = rep.action(g);
        for (std::size_t out = 0; out < dim_v_; ++out) {
            for (std::size_t in = 0; in < dim_v_; ++in) {
                data_[(out * dim_v_ + in) * dim_g_ + g] = a(out, in);
            }
        }
    }
}

Matrix LambdaMap::contract(const Vector& x) const
{
    if (x.size() != dim_g_) {
        throw DimensionMismatch("LambdaMap::contract", dim_g_, 1, x.size(), 1);
    }
    Matrix m(dim_v_, dim_v_);
    for (std::size_t out = 0; out < dim_v_; ++out) {
        for (std::size_t in = 0; in < dim_v_; ++in) {
            for (std::size_t g = 0; g < dim_g_; ++g) {
                m(out, in) += entry(out, in, g) * x[g];
            }
        }
    }
    return m;
}

LambdaTower::LambdaTower(const LambdaMap& lambda, std::size_t max_degree)
    : dim_v_(lambda.dim_v()), dim_g_(lambda.dim_g())
{
    levels_.push_back({Matrix::identity(dim_v_)});
    for (std::size_t k = 1; k <= max_degree; ++k) {
        const auto& prev = levels_.back();
        std::vector<Matrix> level;
        level.reserve(prev.size() * dim_g_);
        // Applying Lambda once more to the V-output of Lambda^(k-1) adds a new
        // leading g*-slot: word (g, rest) <- Lambda_g after Lambda^(k-1)_rest.
        for (std::size_t g = 0; g < dim_g_; ++g) {
            for (const Matrix& rest : prev) {
                Matrix block(dim_v_, dim_v_);
                for (std::size_t out = 0; out < dim_v_; ++out) {
                    for (std::size_t mid = 0; mid < dim_v_; ++mid) {
                        const Rational& l = lambda.entry(out, mid, g);
                        if (sgn(l) == 0) {
                            continue;
                        }
                        for (std::size_t in = 0; in < dim_v_; ++in) {
                            block(out, in) += l * rest(mid, in);
                        }
                    }
                }
                level.push_back(std::move(block));
            }
        }
        levels_.push_back(std::move(level));
    }
}

const Matrix& LambdaTower::pairing(const Word& w) const
{
    if (w.size() > max_degree()) {
        throw std::length_error("LambdaTower: word longer than the tower");
    }
    std::size_t rank = 0;
    for (std::size_t letter : w) {
        if (letter >= dim_g_) {
            throw std::out_of_range("LambdaTower: letter out of range");
        }
        rank = rank * dim_g_ + letter;
    }
    return levels_[w.size()][rank];
}

Matrix phi(const LambdaTower& tower, const TensorElement& t)
{
    Matrix out(tower.dim_v(), tower.dim_v());
    for (const auto& [w, c] : t.terms()) {
        out += tower.pairing(w) * c;
    }
    return out;
}

Matrix phi(const Representation& rep, const TensorElement& t)
{
    return phi(LambdaTower(LambdaMap(rep), t.degree()), t);
}

Matrix s_to_hom(const LambdaTower& tower, const SymElement& s)
{
    return phi(tower, symmetrize(s, std::max(tower.max_degree(), s.degree())));
}

Matrix s_to_hom(const Representation& rep, const SymElement& s)
{
    return s_to_hom(LambdaTower(LambdaMap(rep), s.degree()), s);
}

// --- invariants ----------------------------------------------------------------

SymElement apply_derivation(const LieAlgebra& alg, std::size_t i, const SymElement& s)
{
    SymElement out;
    for (const auto& [m, c] : s.terms()) {
        const auto& idx = m.indices();
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const Vector& br = alg.bracket(i, idx[t]);
            for (std::size_t k = 0; k < alg.dim(); ++k) {
                if (sgn(br[k]) == 0) {
                    continue;
                }
                auto replaced = idx;
                replaced[t] = k;
                out.add(SymMonomial(std::move(replaced)), c * br[k]);
            }
        }
    }
    return out;
}

std::vector<SymElement> invariants_s(const LieAlgebra& alg, std::size_t degree)
{
    const auto basis = sym_monomials(alg.dim(), degree);
    std::map<SymMonomial, std::size_t> position;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        position[basis[i]] = i;
    }
    const std::size_t n = basis.size();
    Matrix stacked(alg.dim() * n, n);
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        for (std::size_t col = 0; col < n; ++col) {
            const SymElement image = apply_derivation(alg, i, SymElement(basis[col]));
            for (const auto& [m, c] : image.terms()) {
                stacked(i * n + position.at(m), col) = c;
            }
        }
    }
    std::vector<SymElement> out;
    for (const Vector& v : kernel(stacked)) {
        SymElement s;
        for (std::size_t col = 0; col < n; ++col) {
            s.add(basis[col], v[col]);
        }
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            if (!apply_derivation(alg, i, s).is_zero()) {
                throw std::logic_error("invariants_s: kernel element is not invariant");
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

// --- diagram checks ------------------------------------------------------------

LieDiagramReport check_lie_diagram(const Representation& rep, const LambdaTower& tower, const SymElement& s)
{
    LieDiagramReport r;
    r.path_a = theta(rep, symmetrize(s, std::max(tower.max_degree(), s.degree())));
    r.path_b = s_to_hom(tower, s);
    r.difference = r.path_a - r.path_b;
    r.agree = r.difference.is_zero();
    const LieAlgebra& alg = rep.algebra();
    r.invariant = true;
    for (std::size_t i = 0; i < alg.dim() && r.invariant; ++i) {
        r.invariant = apply_derivation(alg, i, s).is_zero();
    }
    if (r.invariant) {
        bool central = true;
        for (std::size_t i = 0; i < alg.dim() && central; ++i) {
            central = commutator(r.path_b, rep.action(i)).is_zero();
        }
        r.central = central;
    }
    return r;
}

LieDiagramReport check_lie_diagram(const Representation& rep, const SymElement& s, std::size_t max_degree)
{
    return check_lie_diagram(rep, LambdaTower(LambdaMap(rep), std::max(max_degree, s.degree())), s);
}

AdjunctionReport adjunction_check(const Representation& rep)
{
    const LambdaMap lambda(rep);
    AdjunctionReport r;
    const std::size_t n = rep.algebra().dim();
    for (std::size_t i = 0; i < n; ++i) {
        Vector x(n);
        x[i] = 1;
        r.contracted.push_back(lambda.contract(x));
        if (r.contracted.back() != rep.action(i)) {
            r.holds = false;
            r.failing.push_back(i);
        }
    }
    return r;
}

bool enveloping_relation_holds(const Representation& rep)
{
    const LieAlgebra& alg = rep.algebra();
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        for (std::size_t j = 0; j < alg.dim(); ++j) {
            TensorElement lhs = TensorElement::word({i, j}) - TensorElement::word({j, i});
            TensorElement rhs;
            for (std::size_t k = 0; k < alg.dim(); ++k) {
                rhs.add({k}, alg.constant(i, j, k));
            }
            if (theta(rep, lhs) != theta(rep, rhs)) {
                return false;
            }
        }
    }
    return true;
}

// --- printing -------------------------------------------------------------------

namespace {

template <typename Terms, typename Render>
std::string join_terms(const Terms& terms, Render render)
{
    if (terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms) {
        const bool neg = sgn(c) < 0;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        const Rational mag = abs(c);
        const std::string body = render(key);
        if (body.empty()) {
            os << mag;
        } else if (mag == 1) {
            os << body;
        } else {
            os << mag << "*" << body;
        }
        first = false;
    }
    return os.str();
}

} // namespace

std::string to_string(const SymElement& s, const std::vector<std::string>& labels)
{
    return join_terms(s.terms(), [&](const SymMonomial& m) {
        std::string out;
        for (std::size_t k = 0; k < m.indices().size(); ++k) {
            out += (k ? "*" : "") + labels.at(m.indices()[k]);
        }
        return out;
    });
}

std::string to_string(const TensorElement& t, const std::vector<std::string>& labels)
{
    return join_terms(t.terms(), [&](const Word& w) {
        std::string out;
        for (std::size_t k = 0; k < w.size(); ++k) {
            out += (k ? "(x)" : "") + labels.at(w[k]);
        }
        return out;
    });
}

} // namespace duflo
