#include <duflo/catalog.hpp>
#include <duflo/hodge.hpp>

#include <json.hpp>

namespace duflo {

using nlohmann::json;

namespace {

json mask_indices(Mask m)
{
    json out = json::array();
    for (std::size_t i = 0; i < 32; ++i) {
        if (m & (Mask{1} << i)) {
            out.push_back(i);
        }
    }
    return out;
}

template <typename Tag>
std::string bi_to_json(const BiGraded<Tag>& v)
{
    json out = json::array();
    std::pair<int, int> current{-1, -1};
    for (const auto& [k, c] : v.terms()) {
        if (std::pair{k.p(), k.q()} != current) {
            current = {k.p(), k.q()};
            out.push_back({{"bidegree", {k.p(), k.q()}}, {"terms", json::array()}});
        }
        out.back()["terms"].push_back({{"a", mask_indices(k.a)}, {"b", mask_indices(k.b)}, {"coeff", to_string(c)}});
    }
    return out.dump();
}

Mask parse_indices(const json& node, std::size_t n, const std::string& where)
{
    if (!node.is_array()) {
        throw InputError(where + ": expected an index array");
    }
    Mask m = 0;
    long previous = -1;
    for (const auto& idx : node) {
        if (!idx.is_number_unsigned()) {
            throw InputError(where + ": indices must be non-negative integers");
        }
        const auto i = idx.get<long>();
        if (i <= previous) {
            throw InputError(where + ": indices must be strictly increasing");
        }
        if (static_cast<std::size_t>(i) >= n) {
            throw InputError(where + ": index " + std::to_string(i) + " out of range for dimension " + std::to_string(n));
        }
        previous = i;
        m |= Mask{1} << i;
    }
    return m;
}

template <typename Tag>
BiGraded<Tag> bi_from_json(std::size_t n, const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw InputError("class literal must be a list of {bidegree, terms} objects");
    }
    BiGraded<Tag> out(n);
    for (std::size_t ci = 0; ci < doc.size(); ++ci) {
        const json& comp = doc[ci];
        const std::string where = "[" + std::to_string(ci) + "]";
        if (!comp.is_object() || !comp.contains("bidegree") || !comp["bidegree"].is_array() ||
            comp["bidegree"].size() != 2 || !comp["bidegree"][0].is_number_unsigned() ||
            !comp["bidegree"][1].is_number_unsigned() || !comp.contains("terms") || !comp["terms"].is_array()) {
            throw InputError(where + ": expected {\"bidegree\": [p, q], \"terms\": [...]}");
        }
        const int p = comp["bidegree"][0].get<int>();
        const int q = comp["bidegree"][1].get<int>();
        for (std::size_t ti = 0; ti < comp["terms"].size(); ++ti) {
            const json& t = comp["terms"][ti];
            const std::string tw = where + ".terms[" + std::to_string(ti) + "]";
            if (!t.is_object() || !t.contains("a") || !t.contains("b") || !t.contains("coeff")) {
                throw InputError(tw + ": expected {\"a\": [...], \"b\": [...], \"coeff\": \"p/q\"}");
            }
            const Mask a = parse_indices(t["a"], n, tw + ".a");
            const Mask b = parse_indices(t["b"], n, tw + ".b");
            if (std::popcount(a) != p || std::popcount(b) != q) {
                throw InputError(tw + ": term does not match bidegree (" + std::to_string(p) + "," +
                                 std::to_string(q) + ")");
            }
            Rational coeff;
            if (t["coeff"].is_string()) {
                try {
                    coeff = parse_rational(t["coeff"].get<std::string>());
                } catch (const std::invalid_argument& e) {
                    throw InputError(tw + ": " + e.what());
                }
            } else if (t["coeff"].is_number_integer()) {
                coeff = t["coeff"].get<long>();
            } else {
                throw InputError(tw + ": coeff must be a \"p/q\" string or an integer");
            }
            out.add({a, b}, coeff);
        }
    }
    return out;
}

} // namespace

std::string to_json(const FormClass& v) { return bi_to_json(v); }
std::string to_json(const PolyClass& v) { return bi_to_json(v); }
FormClass form_from_json(std::size_t n, const std::string& text) { return bi_from_json<FormTag>(n, text); }
PolyClass poly_from_json(std::size_t n, const std::string& text) { return bi_from_json<PolyTag>(n, text); }

} // namespace duflo
