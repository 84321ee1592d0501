#include <duflo/catalog.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace duflo {

using nlohmann::json;

namespace {

Vector unit(std::size_t n, std::size_t k, const Rational& scale = 1)
{
    Vector v(n);
    v[k] = scale;
    return v;
}

void set_bracket(StructureConstants& c, std::size_t i, std::size_t j, const Vector& value)
{
    c[i][j] = value;
    for (std::size_t k = 0; k < value.size(); ++k) {
        c[j][i][k] = -value[k];
    }
}

std::vector<std::vector<std::size_t>> multisets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Rational rational_field(const json& node, const std::string& where)
{
    if (node.is_string()) {
        try {
            return parse_rational(node.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (node.is_number_integer()) {
        return Rational(node.get<long>());
    }
    throw InputError(where + ": expected a rational as a \"p/q\" string or an integer");
}

std::size_t index_field(const json& obj, const char* key, std::size_t dim, const std::string& where)
{
    if (!obj.contains(key) || !obj[key].is_number_unsigned()) {
        throw InputError(where + ": missing or non-integer field '" + key + "'");
    }
    const auto v = obj[key].get<std::size_t>();
    if (v >= dim) {
        throw InputError(where + ": index '" + key + "' = " + std::to_string(v) + " out of range for dim " +
                         std::to_string(dim));
    }
    return v;
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

LieAlgebra abelian(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("x" + std::to_string(i));
    }
    return make_lie_algebra(zero_constants(n), labels, "abelian" + std::to_string(n));
}

LieAlgebra heisenberg3()
{
    auto c = zero_constants(3);
    set_bracket(c, 0, 1, unit(3, 2));
    return make_lie_algebra(std::move(c), {"x", "y", "z"}, "heisenberg3");
}

LieAlgebra sl2()
{
    auto c = zero_constants(3);
    constexpr std::size_t e = 0, f = 1, h = 2;
    set_bracket(c, h, e, unit(3, e, 2));
    set_bracket(c, h, f, unit(3, f, -2));
    set_bracket(c, e, f, unit(3, h));
    return make_lie_algebra(std::move(c), {"e", "f", "h"}, "sl2");
}

LieAlgebra gl2()
{
    // E_ab with index 2a + b; [E_ab, E_cd] = d_bc E_ad - d_da E_cb
    auto c = zero_constants(4);
    for (std::size_t x = 0; x < 4; ++x) {
        for (std::size_t y = 0; y < 4; ++y) {
            const std::size_t a = x / 2, b = x % 2, cc = y / 2, d = y % 2;
            if (b == cc) {
                c[x][y][2 * a + d] += 1;
            }
            if (d == a) {
                c[x][y][2 * cc + b] -= 1;
            }
        }
    }
    return make_lie_algebra(std::move(c), {"E11", "E12", "E21", "E22"}, "gl2");
}

Representation sl2_irrep(std::size_t dim)
{
    if (dim == 0) {
        throw std::invalid_argument("sl2_irrep: dimension must be positive");
    }
    const std::size_t m = dim - 1;
    Matrix e(dim, dim), f(dim, dim), h(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        h(k, k) = Rational(static_cast<long>(m) - 2 * static_cast<long>(k));
        if (k + 1 < dim) {
            f(k + 1, k) = 1;
        }
        if (k > 0) {
            e(k - 1, k) = Rational(static_cast<long>(k * (m - k + 1)));
        }
    }
    std::string name = dim == 1 ? "trivial" : dim == 2 ? "standard" : "irrep" + std::to_string(dim);
    return make_representation(sl2(), {e, f, h}, name);
}

Representation symmetric_power(const Representation& rep, std::size_t k)
{
    const auto basis = multisets(rep.dim(), k);
    std::map<std::vector<std::size_t>, std::size_t> position;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        position[basis[i]] = i;
    }
    std::vector<Matrix> actions;
    for (const Matrix& a : rep.actions()) {
        Matrix m(basis.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
            for (std::size_t t = 0; t < k; ++t) {
                const std::size_t in = basis[col][t];
                for (std::size_t out = 0; out < rep.dim(); ++out) {
                    if (sgn(a(out, in)) == 0) {
                        continue;
                    }
                    auto mono = basis[col];
                    mono[t] = out;
                    std::sort(mono.begin(), mono.end());
                    m(position.at(mono), col) += a(out, in);
                }
            }
        }
        actions.push_back(std::move(m));
    }
    return make_representation(rep.algebra(), std::move(actions), "sym" + std::to_string(k) + "(" + rep.name() + ")");
}

Representation direct_sum(const Representation& a, const Representation& b)
{
    const std::size_t n = a.dim() + b.dim();
    std::vector<Matrix> actions;
    for (std::size_t i = 0; i < a.algebra().dim(); ++i) {
        Matrix m(n, n);
        for (std::size_t r = 0; r < a.dim(); ++r) {
            for (std::size_t c = 0; c < a.dim(); ++c) {
                m(r, c) = a.action(i)(r, c);
            }
        }
        for (std::size_t r = 0; r < b.dim(); ++r) {
            for (std::size_t c = 0; c < b.dim(); ++c) {
                m(a.dim() + r, a.dim() + c) = b.action(i)(r, c);
            }
        }
        actions.push_back(std::move(m));
    }
    return make_representation(a.algebra(), std::move(actions), a.name() + "+" + b.name());
}

Representation conjugate(const Representation& rep, const Matrix& p, const Matrix& p_inverse)
{
    if (mat_mul(p, p_inverse) != Matrix::identity(rep.dim())) {
        throw std::invalid_argument("conjugate: matrices are not mutually inverse");
    }
    std::vector<Matrix> actions;
    for (const Matrix& a : rep.actions()) {
        actions.push_back(mat_mul(mat_mul(p, a), p_inverse));
    }
    return make_representation(rep.algebra(), std::move(actions), "conj(" + rep.name() + ")");
}

LieAlgebra catalog_algebra(const std::string& name)
{
    if (name == "sl2") {
        return sl2();
    }
    if (name == "gl2") {
        return gl2();
    }
    if (name == "heisenberg3") {
        return heisenberg3();
    }
    if (name.rfind("abelian", 0) == 0) {
        const std::string digits = name.substr(7);
        if (!digits.empty() && digits.size() <= 2 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            const auto n = std::stoul(digits);
            if (n >= 1 && n <= 8) {
                return abelian(n);
            }
        }
    }
    throw InputError("unknown algebra '" + name + "' (known: abelian<n> for 1 <= n <= 8, heisenberg3, sl2, gl2)");
}

std::vector<std::string> catalog_algebra_names()
{
    return {"abelian2", "heisenberg3", "sl2", "gl2"};
}

std::vector<Representation> catalog_representations(const LieAlgebra& alg)
{
    std::vector<Representation> reps;
    const std::string& n = alg.name();
    if (n == "sl2") {
        for (std::size_t d = 1; d <= 5; ++d) {
            reps.push_back(sl2_irrep(d));
        }
        reps.push_back(adjoint_rep(alg));
        reps.push_back(direct_sum(sl2_irrep(2), sl2_irrep(2)));
    } else if (n == "gl2") {
        const Matrix e11{{1, 0}, {0, 0}}, e12{{0, 1}, {0, 0}}, e21{{0, 0}, {1, 0}}, e22{{0, 0}, {0, 1}};
        const auto standard = make_representation(alg, {e11, e12, e21, e22}, "standard");
        reps.push_back(standard);
        reps.push_back(make_representation(alg, {e11 * Rational(-1), e21 * Rational(-1), e12 * Rational(-1),
                                                 e22 * Rational(-1)},
                                           "dual"));
        reps.push_back(make_representation(alg, {Matrix{{1}}, Matrix{{0}}, Matrix{{0}}, Matrix{{1}}}, "det"));
        reps.push_back(symmetric_power(standard, 2));
        reps.push_back(adjoint_rep(alg));
        reps.push_back(zero_rep(alg, 2));
    } else if (n == "heisenberg3") {
        Matrix x(3, 3), y(3, 3), z(3, 3);
        x(0, 1) = 1;
        y(1, 2) = 1;
        z(0, 2) = 1;
        const auto standard = make_representation(alg, {x, y, z}, "standard");
        reps.push_back(standard);
        reps.push_back(adjoint_rep(alg));
        reps.push_back(zero_rep(alg, 2));
        const Matrix p{{1, 2, -1}, {0, 1, 3}, {0, 0, 1}};
        const Matrix p_inv{{1, -2, 7}, {0, 1, -3}, {0, 0, 1}};
        reps.push_back(conjugate(standard, p, p_inv));
        reps.push_back(direct_sum(standard, zero_rep(alg, 2)));
    } else if (n.rfind("abelian", 0) == 0) {
        reps.push_back(zero_rep(alg, 2));
        std::vector<Matrix> diag, jordan;
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            Matrix d(3, 3);
            for (std::size_t k = 0; k < 3; ++k) {
                d(k, k) = Rational(static_cast<long>((i + 1) * (k + 1)) - 2);
            }
            diag.push_back(std::move(d));
            // polynomials in one nilpotent Jordan block commute
            Matrix j(4, 4);
            for (std::size_t k = 0; k + 1 < 4; ++k) {
                j(k, k + 1) = Rational(static_cast<long>(i) + 1);
            }
            for (std::size_t k = 0; k + 2 < 4; ++k) {
                j(k, k + 2) = Rational(static_cast<long>(i));
            }
            jordan.push_back(std::move(j));
        }
        reps.push_back(make_representation(alg, std::move(diag), "diagonal"));
        reps.push_back(make_representation(alg, std::move(jordan), "jordan"));
    } else {
        reps.push_back(zero_rep(alg, 2));
        reps.push_back(adjoint_rep(alg));
    }
    return reps;
}

Representation catalog_representation(const LieAlgebra& alg, const std::string& rep_name)
{
    std::string known;
    for (auto& r : catalog_representations(alg)) {
        if (r.name() == rep_name) {
            return r;
        }
        known += (known.empty() ? "" : ", ") + r.name();
    }
    throw InputError("unknown representation '" + rep_name + "' for " + alg.name() + " (known: " + known + ")");
}

LieAlgebra lie_algebra_from_json(const std::string& text, const std::string& name)
{
    const json doc = parse_json(text);
    if (!doc.is_object()) {
        throw InputError("algebra definition must be a JSON object");
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) {
        throw InputError("missing or non-integer field 'dim'");
    }
    const auto dim = doc["dim"].get<std::size_t>();
    if (dim == 0 || dim > 16) {
        throw InputError("'dim' must be between 1 and 16");
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array() || doc["labels"].size() != dim) {
            throw InputError("'labels' must be an array of dim strings");
        }
        for (const auto& l : doc["labels"]) {
            if (!l.is_string()) {
                throw InputError("'labels' must be an array of dim strings");
            }
            labels.push_back(l.get<std::string>());
        }
    }
    auto c = zero_constants(dim);
    std::set<std::pair<std::size_t, std::size_t>> given;
    if (doc.contains("brackets")) {
        if (!doc["brackets"].is_array()) {
            throw InputError("'brackets' must be an array");
        }
        std::size_t idx = 0;
        for (const auto& b : doc["brackets"]) {
            const std::string where = "brackets[" + std::to_string(idx++) + "]";
            if (!b.is_object()) {
                throw InputError(where + ": expected an object");
            }
            const auto i = index_field(b, "i", dim, where);
            const auto j = index_field(b, "j", dim, where);
            if (!b.contains("coeffs") || !b["coeffs"].is_array() || b["coeffs"].size() != dim) {
                throw InputError(where + ": 'coeffs' must be an array of dim rationals");
            }
            if (!given.insert({i, j}).second) {
                throw InputError(where + ": duplicate bracket (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
            for (std::size_t k = 0; k < dim; ++k) {
                c[i][j][k] = rational_field(b["coeffs"][k], where + ".coeffs[" + std::to_string(k) + "]");
            }
        }
    }
    for (const auto& [i, j] : given) {
        if (!given.contains({j, i})) {
            for (std::size_t k = 0; k < dim; ++k) {
                c[j][i][k] = -c[i][j][k];
            }
        }
    }
    std::string nm = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : name;
    return make_lie_algebra(std::move(c), std::move(labels), std::move(nm));
}

LieAlgebra load_lie_algebra(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open algebra file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return lie_algebra_from_json(ss.str(), path);
}

Representation representation_from_json(const LieAlgebra& alg, const std::string& text)
{
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("matrices") || !doc["matrices"].is_array() ||
        doc["matrices"].size() != alg.dim()) {
        throw InputError("representation must be an object with 'matrices': one square matrix per basis element");
    }
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        const auto& rows = doc["matrices"][i];
        const std::string where = "matrices[" + std::to_string(i) + "]";
        if (!rows.is_array()) {
            throw InputError(where + ": expected an array of rows");
        }
        Matrix m(rows.size(), rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || rows[r].size() != rows.size()) {
                throw InputError(where + ": matrix must be square");
            }
            for (std::size_t c = 0; c < rows.size(); ++c) {
                m(r, c) = rational_field(rows[r][c], where);
            }
        }
        mats.push_back(std::move(m));
    }
    std::string nm = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "custom";
    return make_representation(alg, std::move(mats), std::move(nm));
}

std::string lie_algebra_to_json(const LieAlgebra& alg)
{
    json doc;
    doc["name"] = alg.name();
    doc["dim"] = alg.dim();
    doc["labels"] = alg.labels();
    json brackets = json::array();
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        for (std::size_t j = i + 1; j < alg.dim(); ++j) {
            const Vector& b = alg.bracket(i, j);
            if (std::all_of(b.begin(), b.end(), [](const Rational& q) { return sgn(q) == 0; })) {
                continue;
            }
            json coeffs = json::array();
            for (const auto& q : b) {
                coeffs.push_back(to_string(q));
            }
            brackets.push_back({{"i", i}, {"j", j}, {"coeffs", coeffs}});
        }
    }
    doc["brackets"] = brackets;
    return doc.dump();
}

} // namespace duflo
