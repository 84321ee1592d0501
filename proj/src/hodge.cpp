#include <duflo/hodge.hpp>

#include <sstream>

namespace duflo {

ModelMismatch::ModelMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("model mismatch: dimension " + std::to_string(lhs) + " vs " + std::to_string(rhs))
{
}

// --- ExtClass ----------------------------------------------------------------------

void ExtClass::add(Mask a, const Rational& coeff)
{
    if (sgn(coeff) == 0) {
        return;
    }
    const std::pair key{std::popcount(a), a};
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) {
            terms_.erase(it);
        }
    }
}

Rational ExtClass::coefficient(Mask a) const
{
    auto it = terms_.find({std::popcount(a), a});
    return it == terms_.end() ? Rational(0) : it->second;
}

ExtClass ExtClass::degree_part(int d) const
{
    ExtClass out(n_);
    for (const auto& [k, c] : terms_) {
        if (k.first == d) {
            out.terms_.emplace(k, c);
        }
    }
    return out;
}

// --- signs ------------------------------------------------------------------------------

int merge_sign(Mask s, Mask t)
{
    if (s & t) {
        return 0;
    }
    // Each pair (i in S, j in T) with i > j costs one transposition.
    int swaps = 0;
    for (Mask rest = t; rest; rest &= rest - 1) {
        const Mask j = rest & (~rest + 1);
        swaps += std::popcount(s & ~((j << 1) - 1));
    }
    return swaps % 2 ? -1 : 1;
}

int monomial_product_sign(BiKey lhs, BiKey rhs)
{
    const int sa = merge_sign(lhs.a, rhs.a);
    const int sb = merge_sign(lhs.b, rhs.b);
    if (sa == 0 || sb == 0) {
        return 0;
    }
    const int jump = (lhs.q() * rhs.p()) % 2 ? -1 : 1;
    return sa * sb * jump;
}

int interior_sign(std::size_t j, BiKey key, BiKey& out)
{
    const Mask bit = Mask{1} << j;
    if (!(key.b & bit)) {
        return 0;
    }
    const int passed = key.p() + std::popcount(key.b & (bit - 1));
    out = {key.a, key.b & ~bit};
    return passed % 2 ? -1 : 1;
}

namespace {

/// Applies the operator of the monomial `op` (A-letters multiply, the
/// other letters contract) to the monomial `target`.
int operator_sign(BiKey op, BiKey target, BiKey& out)
{
    int sign = 1;
    BiKey cur = target;
    // rightmost interior operator acts first
    for (int j = 31; j >= 0; --j) {
        if (!(op.b & (Mask{1} << j))) {
            continue;
        }
        BiKey next;
        const int s = interior_sign(static_cast<std::size_t>(j), cur, next);
        if (s == 0) {
            return 0;
        }
        sign *= s;
        cur = next;
    }
    const int s = merge_sign(op.a, cur.a);
    if (s == 0) {
        return 0;
    }
    out = {op.a | cur.a, cur.b};
    return sign * s;
}

template <typename Tag>
BiGraded<Tag> wedge_impl(const BiGraded<Tag>& u, const BiGraded<Tag>& v)
{
    u.check_same(v);
    BiGraded<Tag> out(u.n());
    for (const auto& [ku, cu] : u.terms()) {
        for (const auto& [kv, cv] : v.terms()) {
            const int s = monomial_product_sign(ku, kv);
            if (s != 0) {
                out.add({ku.a | kv.a, ku.b | kv.b}, s * cu * cv);
            }
        }
    }
    return out;
}

void require_pp(const FormClass& t, const char* op)
{
    for (const auto& [k, c] : t.terms()) {
        if (k.p() != k.q()) {
            throw InvalidToddDatum(std::string(op) + ": class has a component outside bidegrees (p,p)");
        }
    }
    if (t.constant_term() != 1) {
        throw InvalidToddDatum(std::string(op) + ": constant term must be 1");
    }
}

std::vector<FormClass> pp_parts(const FormClass& t)
{
    std::vector<FormClass> parts;
    for (std::size_t d = 0; d <= t.n(); ++d) {
        parts.push_back(t.component(static_cast<int>(d), static_cast<int>(d)));
    }
    return parts;
}

FormClass sum(const std::vector<FormClass>& parts, std::size_t n)
{
    FormClass out(n);
    for (const auto& p : parts) {
        out += p;
    }
    return out;
}

void require_bidegree(const FormClass& v, int p, int q, const char* what)
{
    if (!v.is_homogeneous(p, q)) {
        throw BidegreeError(std::string(what) + " must be of pure bidegree (" + std::to_string(p) + "," +
                            std::to_string(q) + ")");
    }
}

} // namespace

// --- graded series in the form algebra ------------------------------------------------------

FormClass graded_sqrt(const FormClass& t)
{
    require_pp(t, "graded_sqrt");
    const auto tp = pp_parts(t);
    std::vector<FormClass> s{FormClass::one(t.n())};
    for (std::size_t d = 1; d <= t.n(); ++d) {
        FormClass rhs = tp[d];
        for (std::size_t i = 1; i < d; ++i) {
            rhs -= wedge(s[i], s[d - i]);
        }
        s.push_back(rhs * Rational(1, 2));
    }
    return sum(s, t.n());
}

FormClass graded_inverse(const FormClass& t)
{
    require_pp(t, "graded_inverse");
    const auto tp = pp_parts(t);
    std::vector<FormClass> u{FormClass::one(t.n())};
    for (std::size_t d = 1; d <= t.n(); ++d) {
        FormClass acc(t.n());
        for (std::size_t i = 1; i <= d; ++i) {
            acc -= wedge(tp[i], u[d - i]);
        }
        u.push_back(std::move(acc));
    }
    return sum(u, t.n());
}

HodgeModel::HodgeModel(std::size_t n, FormClass todd)
    : n_(n), todd_(std::move(todd)), sqrt_todd_(n), inv_sqrt_todd_(n)
{
    if (todd_.n() != n) {
        throw ModelMismatch(n, todd_.n());
    }
    require_pp(todd_, "HodgeModel");
    sqrt_todd_ = graded_sqrt(todd_);
    inv_sqrt_todd_ = graded_inverse(sqrt_todd_);
}

HodgeModel HodgeModel::torus(std::size_t n)
{
    return HodgeModel(n, FormClass::one(n));
}

FormClass HodgeModel::designated_c1() const
{
    return todd_.component(1, 1) * Rational(2);
}

FormClass evaluate_series(const GradedSeries& series, std::size_t n, std::span<const FormClass> chern,
                          const std::string& family)
{
    FormClass out(n);
    for (const auto& [m, c] : series.terms()) {
        FormClass term = FormClass::one(n) * c;
        for (const auto& v : m.vars()) {
            if (v.family != family) {
                throw std::invalid_argument("evaluate_series: unexpected variable " + v.name());
            }
            if (v.index == 0 || v.index > chern.size()) {
                term = FormClass(n);
                break;
            }
            const FormClass& ck = chern[v.index - 1];
            if (!ck.is_homogeneous(static_cast<int>(v.index), static_cast<int>(v.index))) {
                throw BidegreeError("evaluate_series: c" + std::to_string(v.index) + " must be of bidegree (k,k)");
            }
            term = wedge(term, ck);
        }
        out += term;
    }
    return out;
}

FormClass todd_datum(std::size_t n, std::span<const FormClass> chern)
{
    return evaluate_series(todd(static_cast<unsigned>(n)), n, chern);
}

// --- operations ----------------------------------------------------------------------------------

FormClass wedge(const FormClass& u, const FormClass& v) { return wedge_impl(u, v); }
PolyClass wedge(const PolyClass& u, const PolyClass& v) { return wedge_impl(u, v); }

FormClass contract_T_on_Omega(const PolyClass& alpha, const FormClass& v)
{
    if (alpha.n() != v.n()) {
        throw ModelMismatch(alpha.n(), v.n());
    }
    FormClass out(v.n());
    for (const auto& [ka, ca] : alpha.terms()) {
        for (const auto& [kv, cv] : v.terms()) {
            BiKey res;
            const int s = operator_sign(ka, kv, res);
            if (s != 0) {
                out.add(res, s * ca * cv);
            }
        }
    }
    return out;
}

PolyClass contract_Omega_on_T(const FormClass& v, const PolyClass& alpha)
{
    if (alpha.n() != v.n()) {
        throw ModelMismatch(v.n(), alpha.n());
    }
    PolyClass out(v.n());
    for (const auto& [kv, cv] : v.terms()) {
        // each pairing <b, b*> contributes -1
        const int pairing = kv.q() % 2 ? -1 : 1;
        for (const auto& [ka, ca] : alpha.terms()) {
            BiKey res;
            const int s = operator_sign(kv, ka, res);
            if (s != 0) {
                out.add(res, s * pairing * ca * cv);
            }
        }
    }
    return out;
}

FormClass atiyah_line(const HodgeModel& model, const FormClass& c1)
{
    if (c1.n() != model.n()) {
        throw ModelMismatch(model.n(), c1.n());
    }
    require_bidegree(c1, 1, 1, "atiyah_line: c1");
    return c1;
}

FormClass exp_form(const FormClass& v)
{
    if (sgn(v.constant_term()) != 0) {
        throw std::domain_error("exp_form: constant term must be zero");
    }
    FormClass out = FormClass::one(v.n());
    FormClass power = FormClass::one(v.n());
    for (unsigned k = 1; k <= 2 * v.n(); ++k) {
        power = wedge(power, v) * Rational(1, k);
        if (power.is_zero()) {
            break;
        }
        out += power;
    }
    return out;
}

ExtClass contract_exp_atiyah(const PolyClass& alpha, const FormClass& at)
{
    if (alpha.n() != at.n()) {
        throw ModelMismatch(alpha.n(), at.n());
    }
    require_bidegree(at, 1, 1, "contract_exp_atiyah: at");
    const std::size_t n = at.n();
    // at^k / k! for k = 0..n
    std::vector<FormClass> powers{FormClass::one(n)};
    for (std::size_t k = 1; k <= n; ++k) {
        powers.push_back(wedge(powers.back(), at) * Rational(1, static_cast<unsigned long>(k)));
    }
    ExtClass out(n);
    for (const auto& [ka, ca] : alpha.terms()) {
        const int k = ka.q();
        for (const auto& [kv, cv] : powers[static_cast<std::size_t>(k)].terms()) {
            if (kv.b != ka.b) {
                continue;
            }
            // Full pairing of b*_T against a_S' b_T with |S'| = |T| = k:
            // (-1)^{k(k+1)/2}, then the A-factors merge.
            const int merged = merge_sign(ka.a, kv.a);
            if (merged == 0) {
                continue;
            }
            const int full = (k * (k + 1) / 2) % 2 ? -1 : 1;
            out.add(ka.a | kv.a, full * merged * ca * cv);
        }
    }
    return out;
}

ExtClass collapse_to_ext(const FormClass& v)
{
    ExtClass out(v.n());
    for (const auto& [k, c] : v.terms()) {
        if (k.b == 0) {
            out.add(k.a, c);
        }
    }
    return out;
}

PolyClass duflo(const HodgeModel& model, const PolyClass& alpha)
{
    return contract_Omega_on_T(model.sqrt_todd(), alpha);
}

PolyClass duflo_inverse(const HodgeModel& model, const PolyClass& alpha)
{
    return contract_Omega_on_T(model.inv_sqrt_todd(), alpha);
}

FormClass mukai_line(const HodgeModel& model, const FormClass& c1)
{
    return wedge(exp_form(atiyah_line(model, c1)), model.sqrt_todd());
}

std::vector<PolyClass> poly_basis(std::size_t n)
{
    std::vector<BiKey> keys;
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
        for (Mask b = 0; b < (Mask{1} << n); ++b) {
            keys.push_back({a, b});
        }
    }
    std::sort(keys.begin(), keys.end());
    std::vector<PolyClass> out;
    for (const auto& k : keys) {
        out.push_back(PolyClass::monomial(n, k.a, k.b));
    }
    return out;
}

std::vector<PolyClass> poly_basis(std::size_t n, int p, int q)
{
    std::vector<PolyClass> out;
    for (auto& b : poly_basis(n)) {
        const BiKey k = b.terms().begin()->first;
        if (k.p() == p && k.q() == q) {
            out.push_back(std::move(b));
        }
    }
    return out;
}

std::vector<FormClass> form_basis(std::size_t n, int p, int q)
{
    std::vector<FormClass> out;
    for (const auto& b : poly_basis(n, p, q)) {
        const BiKey k = b.terms().begin()->first;
        out.push_back(FormClass::monomial(n, k.a, k.b));
    }
    return out;
}

namespace {

/// Kernel of a linear map on the span of `domain`, where the image of each
/// basis element is flattened through `image`.
template <typename Image>
std::vector<Vector> kernel_of_map(const std::vector<PolyClass>& domain, Image image)
{
    std::map<std::pair<int, BiKey>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;
    for (const auto& alpha : domain) {
        std::vector<std::pair<std::size_t, Rational>> col;
        for (const auto& [key, c] : image(alpha)) {
            auto [it, inserted] = rows.try_emplace(key, rows.size());
            col.emplace_back(it->second, c);
        }
        columns.push_back(std::move(col));
    }
    Matrix m(rows.size(), domain.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (const auto& [r, c] : columns[j]) {
            m(r, j) = c;
        }
    }
    return kernel(m);
}

std::vector<std::pair<std::pair<int, BiKey>, Rational>> flatten(const ExtClass& e)
{
    std::vector<std::pair<std::pair<int, BiKey>, Rational>> out;
    for (const auto& [k, c] : e.terms()) {
        out.push_back({{0, BiKey{k.second, 0}}, c});
    }
    return out;
}

std::vector<std::pair<std::pair<int, BiKey>, Rational>> flatten(const FormClass& v)
{
    std::vector<std::pair<std::pair<int, BiKey>, Rational>> out;
    for (const auto& [k, c] : v.terms()) {
        out.push_back({{1, k}, c});
    }
    return out;
}

PolyClass combine(const std::vector<PolyClass>& basis, const Vector& coords)
{
    PolyClass out(basis.front().n());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (sgn(coords[i]) != 0) {
            out += basis[i] * coords[i];
        }
    }
    return out;
}

} // namespace

std::vector<PolyClass> hypothesis_kernel(const HodgeModel& model, const FormClass& c1)
{
    const FormClass at = atiyah_line(model, c1);
    const auto basis = poly_basis(model.n());
    std::vector<PolyClass> out;
    for (const auto& v : kernel_of_map(basis, [&](const PolyClass& a) { return flatten(contract_exp_atiyah(a, at)); })) {
        out.push_back(combine(basis, v));
    }
    return out;
}

TheoremBReport theorem_b_check(const HodgeModel& model, const PolyClass& alpha, const FormClass& c1)
{
    if (alpha.n() != model.n()) {
        throw ModelMismatch(model.n(), alpha.n());
    }
    ExtClass h = contract_exp_atiyah(alpha, atiyah_line(model, c1));
    FormClass m = contract_T_on_Omega(duflo(model, alpha), mukai_line(model, c1));
    const bool hyp = h.is_zero();
    const bool concl = m.is_zero();
    return {std::move(h), std::move(m), hyp, concl};
}

SpecialCaseReport special_case_check(const HodgeModel& model, const PolyClass& alpha)
{
    if (alpha.n() != model.n()) {
        throw ModelMismatch(model.n(), alpha.n());
    }
    if (!alpha.is_homogeneous(1, 1)) {
        throw BidegreeError("special_case_check: alpha must be of bidegree (1,1)");
    }
    const std::size_t n = model.n();
    const FormClass c1 = model.designated_c1();
    const PolyClass d_alpha = duflo(model, alpha);

    SpecialCaseReport r{
        d_alpha - alpha,
        contract_Omega_on_T(c1 * Rational(1, 4), alpha),
        contract_T_on_Omega(d_alpha, model.sqrt_todd()).component(2, 0),
        contract_T_on_Omega(alpha, c1 * Rational(1, 2)),
        {},
        {},
    };

    const auto domain = poly_basis(n, 1, 1);
    const auto locus_c1 = kernel_of_map(domain, [&](const PolyClass& a) { return flatten(contract_T_on_Omega(a, c1)); });
    const auto locus_mukai = kernel_of_map(
        domain, [&](const PolyClass& a) { return flatten(contract_T_on_Omega(duflo(model, a), model.sqrt_todd())); });
    r.locus_c1 = locus_c1.empty() ? locus_c1 : span_basis(locus_c1, domain.size());
    r.locus_mukai = locus_mukai.empty() ? locus_mukai : span_basis(locus_mukai, domain.size());
    return r;
}

// --- text ----------------------------------------------------------------------------------------

namespace {

std::string letters(Mask m, const char* prefix)
{
    std::string out;
    for (std::size_t i = 0; i < 32; ++i) {
        if (m & (Mask{1} << i)) {
            out += (out.empty() ? "" : "^") + std::string(prefix) + std::to_string(i);
        }
    }
    return out;
}

template <typename Terms, typename Render>
std::string render_terms(const Terms& terms, Render render)
{
    if (terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        const bool neg = sgn(c) < 0;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        const std::string body = render(k);
        const Rational mag = abs(c);
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

template <typename Tag>
std::string bi_to_string(const BiGraded<Tag>& v, const char* dual)
{
    return render_terms(v.terms(), [&](const BiKey& k) {
        const std::string a = letters(k.a, "a");
        const std::string b = letters(k.b, dual);
        if (a.empty() || b.empty()) {
            return a + b;
        }
        return a + "(x)" + b;
    });
}

} // namespace

std::string to_string(const FormClass& v) { return bi_to_string(v, "b"); }
std::string to_string(const PolyClass& v) { return bi_to_string(v, "B"); }

std::string to_string(const ExtClass& v)
{
    return render_terms(v.terms(), [](const std::pair<int, Mask>& k) { return letters(k.second, "a"); });
}

} // namespace duflo
