#include <duflo/chern.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace duflo {

// --- ChernMonomial ----------------------------------------------------------------

ChernMonomial::ChernMonomial(std::vector<ChernVar> vars) : vars_(std::move(vars))
{
    std::sort(vars_.begin(), vars_.end());
    for (const auto& v : vars_) {
        weight_ += v.weight;
    }
}

std::string ChernMonomial::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < vars_.size();) {
        std::size_t j = i;
        while (j < vars_.size() && vars_[j] == vars_[i]) {
            ++j;
        }
        out += (out.empty() ? "" : "*") + vars_[i].name();
        if (j - i > 1) {
            out += "^" + std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

ChernMonomial operator*(const ChernMonomial& a, const ChernMonomial& b)
{
    std::vector<ChernVar> vars = a.vars_;
    vars.insert(vars.end(), b.vars_.begin(), b.vars_.end());
    return ChernMonomial(std::move(vars));
}

bool operator<(const ChernMonomial& a, const ChernMonomial& b)
{
    if (a.weight_ != b.weight_) {
        return a.weight_ < b.weight_;
    }
    return std::lexicographical_compare(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end());
}

// --- GradedSeries ---------------------------------------------------------------------

GradedSeries GradedSeries::constant(const Rational& c, unsigned truncation)
{
    GradedSeries s(truncation);
    s.add(ChernMonomial{}, c);
    return s;
}

GradedSeries GradedSeries::variable(const ChernVar& v, unsigned truncation)
{
    GradedSeries s(truncation);
    s.add(ChernMonomial({v}), 1);
    return s;
}

void GradedSeries::add(const ChernMonomial& m, const Rational& coeff)
{
    if (m.weight() > truncation_ || sgn(coeff) == 0) {
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

Rational GradedSeries::constant_term() const
{
    return coefficient(ChernMonomial{});
}

Rational GradedSeries::coefficient(const ChernMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

GradedSeries GradedSeries::weight_part(unsigned d) const
{
    GradedSeries out(truncation_);
    for (const auto& [m, c] : terms_) {
        if (m.weight() == d) {
            out.terms_.emplace(m, c);
        }
    }
    return out;
}

GradedSeries GradedSeries::truncated(unsigned n) const
{
    GradedSeries out(std::min(n, truncation_));
    for (const auto& [m, c] : terms_) {
        out.add(m, c);
    }
    return out;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o)
{
    truncation_ = std::min(truncation_, o.truncation_);
    *this = truncated(truncation_);
    for (const auto& [m, c] : o.terms_) {
        add(m, c);
    }
    return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o)
{
    truncation_ = std::min(truncation_, o.truncation_);
    *this = truncated(truncation_);
    for (const auto& [m, c] : o.terms_) {
        add(m, -c);
    }
    return *this;
}

GradedSeries& GradedSeries::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
    }
    for (auto& [m, c] : terms_) {
        c *= s;
    }
    return *this;
}

GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
GradedSeries operator*(GradedSeries a, const Rational& s) { return a *= s; }

GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b)
{
    GradedSeries out(std::min(a.truncation(), b.truncation()));
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.weight() + mb.weight() <= out.truncation()) {
                out.add(ma * mb, ca * cb);
            }
        }
    }
    return out;
}

namespace {

void require_unit(const GradedSeries& a, const char* op)
{
    if (a.constant_term() != 1) {
        throw NonUnitConstant(std::string(op) + ": constant term must be 1, got " + to_string(a.constant_term()));
    }
}

} // namespace

GradedSeries series_sqrt(const GradedSeries& a)
{
    require_unit(a, "series_sqrt");
    const unsigned n = a.truncation();
    std::vector<GradedSeries> parts{GradedSeries::constant(1, n)};
    for (unsigned d = 1; d <= n; ++d) {
        GradedSeries rhs = a.weight_part(d);
        for (unsigned i = 1; i < d; ++i) {
            rhs -= series_mul(parts[i], parts[d - i]).weight_part(d);
        }
        parts.push_back(rhs * Rational(1, 2));
    }
    GradedSeries out(n);
    for (const auto& p : parts) {
        out += p;
    }
    return out;
}

GradedSeries series_inv(const GradedSeries& a)
{
    require_unit(a, "series_inv");
    const unsigned n = a.truncation();
    std::vector<GradedSeries> parts{GradedSeries::constant(1, n)};
    for (unsigned d = 1; d <= n; ++d) {
        GradedSeries acc(n);
        for (unsigned i = 1; i <= d; ++i) {
            acc -= series_mul(a.weight_part(i), parts[d - i]).weight_part(d);
        }
        parts.push_back(std::move(acc));
    }
    GradedSeries out(n);
    for (const auto& p : parts) {
        out += p;
    }
    return out;
}

GradedSeries series_exp(const GradedSeries& a)
{
    if (sgn(a.constant_term()) != 0) {
        throw std::domain_error("series_exp: constant term must be zero");
    }
    const unsigned n = a.truncation();
    GradedSeries out = GradedSeries::constant(1, n);
    GradedSeries power = GradedSeries::constant(1, n);
    for (unsigned k = 1; k <= n; ++k) {
        power = series_mul(power, a) * Rational(1, k);
        if (power.is_zero()) {
            break;
        }
        out += power;
    }
    return out;
}

GradedSeries substitute(const GradedSeries& s, const std::map<ChernVar, GradedSeries>& values, unsigned truncation)
{
    GradedSeries out(truncation);
    for (const auto& [m, c] : s.terms()) {
        GradedSeries term = GradedSeries::constant(c, truncation);
        for (const auto& v : m.vars()) {
            auto it = values.find(v);
            term = series_mul(term, it == values.end() ? GradedSeries::variable(v, truncation) : it->second);
            if (term.is_zero()) {
                break;
            }
        }
        out += term;
    }
    return out;
}

std::vector<GradedSeries> power_sums(unsigned rank, unsigned truncation, const std::string& family)
{
    auto e = [&](unsigned i) {
        return i <= rank ? GradedSeries::variable(ChernVar::chern(family, i), truncation) : GradedSeries(truncation);
    };
    std::vector<GradedSeries> p{GradedSeries::constant(rank, truncation)};
    for (unsigned k = 1; k <= truncation; ++k) {
        GradedSeries pk = e(k) * Rational(k);
        if (k % 2 == 0) {
            pk *= -1;
        }
        for (unsigned i = 1; i < k; ++i) {
            GradedSeries t = series_mul(e(i), p[k - i]);
            if (i % 2 == 0) {
                t *= -1;
            }
            pk += t;
        }
        p.push_back(std::move(pk));
    }
    return p;
}

std::vector<Rational> todd_generator(unsigned truncation)
{
    // (1 - e^{-t}) / t = sum_k (-1)^k t^k / (k+1)!, inverted term by term.
    std::vector<Rational> g(truncation + 1), q(truncation + 1);
    for (unsigned k = 0; k <= truncation; ++k) {
        g[k] = (k % 2 ? -1 : 1) / factorial(k + 1);
    }
    q[0] = 1;
    for (unsigned d = 1; d <= truncation; ++d) {
        for (unsigned i = 1; i <= d; ++i) {
            q[d] -= g[i] * q[d - i];
        }
    }
    return q;
}

namespace {

/// Coefficients of log f for a univariate f with f[0] = 1, via
/// f' = f (log f)'  =>  d l_d = d f_d - sum_{i=1}^{d-1} i l_i f_{d-i}.
std::vector<Rational> univariate_log(const std::vector<Rational>& f)
{
    std::vector<Rational> l(f.size());
    for (unsigned d = 1; d < f.size(); ++d) {
        Rational acc = Rational(d) * f[d];
        for (unsigned i = 1; i < d; ++i) {
            acc -= Rational(i) * l[i] * f[d - i];
        }
        l[d] = acc / d;
    }
    return l;
}

} // namespace

GradedSeries todd(unsigned truncation, const std::string& family)
{
    const auto log_q = univariate_log(todd_generator(truncation));
    const auto p = power_sums(truncation, truncation, family);
    GradedSeries exponent(truncation);
    for (unsigned k = 1; k <= truncation; ++k) {
        exponent += p[k] * log_q[k];
    }
    return series_exp(exponent);
}

GradedSeries chern_character(unsigned rank, unsigned truncation, const std::string& family)
{
    const auto p = power_sums(rank, truncation, family);
    GradedSeries ch = GradedSeries::constant(rank, truncation);
    for (unsigned k = 1; k <= truncation; ++k) {
        ch += p[k] * (1 / factorial(k));
    }
    return ch;
}

GradedSeries mukai_vector(unsigned rank, unsigned truncation)
{
    return series_mul(chern_character(rank, truncation, "f"), series_sqrt(todd(truncation, "c")));
}

std::string to_string(const GradedSeries& s)
{
    if (s.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        const bool neg = sgn(c) < 0;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        const Rational mag = abs(c);
        if (m.vars().empty()) {
            os << mag;
        } else if (mag == 1) {
            os << m.to_string();
        } else {
            os << mag << "*" << m.to_string();
        }
        first = false;
    }
    return os.str();
}

std::string to_json(const GradedSeries& s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : s.terms()) {
        nlohmann::json mono = nlohmann::json::object();
        for (const auto& v : m.vars()) {
            mono[v.name()] = mono.value(v.name(), 0) + 1;
        }
        terms.push_back({{"monomial", mono}, {"weight", m.weight()}, {"coeff", to_string(c)}});
    }
    nlohmann::json doc{{"truncation", s.truncation()}, {"text", to_string(s)}, {"terms", terms}};
    return doc.dump();
}

} // namespace duflo
