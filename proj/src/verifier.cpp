#include <duflo/verifier.hpp>

#include <duflo/catalog.hpp>
#include <duflo/chern.hpp>
#include <duflo/hodge.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace duflo {

using nlohmann::json;

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::skipped:
        return "skipped";
    }
    return "unknown";
}

std::string VerificationReport::to_json_line(bool with_timing) const
{
    json j;
    j["suite"] = suite;
    j["instance"] = instance;
    j["status"] = to_string(status);
    if (!detail.empty()) {
        j["detail"] = detail;
    }
    if (!witness.empty()) {
        j["witness"] = json::parse(witness);
    }
    if (with_timing) {
        j["elapsed_ms"] = elapsed_ms;
    }
    return j.dump();
}

int exit_code(const std::vector<VerificationReport>& reports)
{
    const bool failed =
        std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == Status::fail; });
    return failed ? kExitFailure : kExitPass;
}

void emit_reports(std::vector<VerificationReport> reports, std::ostream& out, std::ostream& summary, bool with_timing)
{
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        return std::tie(a.suite, a.instance) < std::tie(b.suite, b.instance);
    });
    std::map<std::string, std::array<std::size_t, 3>> counts;
    std::map<std::string, double> elapsed;
    for (const auto& r : reports) {
        out << r.to_json_line(with_timing) << '\n';
        ++counts[r.suite][static_cast<std::size_t>(r.status)];
        elapsed[r.suite] += r.elapsed_ms;
    }
    std::size_t failures = 0;
    for (const auto& [suite, c] : counts) {
        summary << std::left << std::setw(22) << suite << " pass " << c[0] << "  fail " << c[1] << "  skipped " << c[2]
                << "  (" << std::fixed << std::setprecision(1) << elapsed[suite] << " ms)\n";
        failures += c[1];
    }
    summary << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) FAILED") << '\n';
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(to_string(m(r, c)));
        }
        rows.push_back(row);
    }
    return rows;
}

json rep_json(const Representation& rep)
{
    json mats = json::array();
    for (const auto& m : rep.actions()) {
        mats.push_back(matrix_json(m));
    }
    return {{"name", rep.name()}, {"matrices", mats}};
}

json sym_json(const SymElement& s)
{
    json out = json::array();
    for (const auto& [m, c] : s.terms()) {
        out.push_back({{"monomial", m.indices()}, {"coeff", to_string(c)}});
    }
    return out;
}

std::string instance_of(const Representation& rep)
{
    return rep.algebra().name() + "/" + rep.name();
}

VerificationReport make_report(std::string suite, std::string instance, bool ok, std::string detail, json witness,
                               Clock::time_point start)
{
    VerificationReport r;
    r.suite = std::move(suite);
    r.instance = std::move(instance);
    r.status = ok ? Status::pass : Status::fail;
    r.detail = std::move(detail);
    if (!ok) {
        r.witness = witness.dump();
    }
    r.elapsed_ms = ms_since(start);
    return r;
}

void lie_suites_for_rep(const Representation& rep, std::size_t max_degree, std::vector<VerificationReport>& out)
{
    const LieAlgebra& alg = rep.algebra();
    const json alg_witness = json::parse(lie_algebra_to_json(alg));
    const std::string inst = instance_of(rep);

    {
        const auto start = Clock::now();
        const AdjunctionReport adj = adjunction_check(rep);
        json w{{"algebra", alg_witness}, {"rep", rep_json(rep)}, {"failing_basis", adj.failing}};
        out.push_back(make_report("adjunction", inst, adj.holds, "", w, start));
    }
    {
        const auto start = Clock::now();
        const bool ok = enveloping_relation_holds(rep);
        out.push_back(make_report("enveloping-relation", inst, ok, "", {{"algebra", alg_witness}, {"rep", rep_json(rep)}},
                                  start));
    }

    const LambdaTower tower(LambdaMap(rep), max_degree);
    for (std::size_t len = 0; len <= max_degree; ++len) {
        const auto start = Clock::now();
        std::size_t checked = 0;
        json w;
        bool ok = true;
        for (const Word& word : all_words(alg.dim(), len)) {
            const TensorElement t = TensorElement::word(word, max_degree);
            const Matrix a = theta(rep, t);
            const Matrix b = phi(tower, t);
            ++checked;
            if (a != b) {
                ok = false;
                w = {{"algebra", alg_witness}, {"rep", rep_json(rep)}, {"word", word},
                     {"theta", matrix_json(a)}, {"phi", matrix_json(b)}};
                break;
            }
        }
        out.push_back(make_report("phi-theta", inst + "/len=" + std::to_string(len), ok,
                                  std::to_string(checked) + " words", w, start));
    }

    for (std::size_t deg = 0; deg <= max_degree; ++deg) {
        const auto start = Clock::now();
        std::size_t checked = 0;
        json w;
        bool ok = true;
        for (const SymMonomial& m : sym_monomials(alg.dim(), deg)) {
            const LieDiagramReport r = check_lie_diagram(rep, tower, SymElement(m));
            ++checked;
            if (!r.agree || r.central == false) {
                ok = false;
                w = {{"algebra", alg_witness}, {"rep", rep_json(rep)}, {"element", sym_json(SymElement(m))},
                     {"path_a", matrix_json(r.path_a)}, {"path_b", matrix_json(r.path_b)}};
                break;
            }
        }
        out.push_back(make_report("lie-diagram", inst + "/deg=" + std::to_string(deg), ok,
                                  std::to_string(checked) + " monomials", w, start));
    }

    for (std::size_t deg = 0; deg <= max_degree; ++deg) {
        const auto start = Clock::now();
        const auto invariants = invariants_s(alg, deg);
        json w;
        bool ok = true;
        for (const SymElement& s : invariants) {
            const LieDiagramReport r = check_lie_diagram(rep, tower, s);
            if (!r.agree || !r.invariant || r.central != true) {
                ok = false;
                w = {{"algebra", alg_witness}, {"rep", rep_json(rep)}, {"element", sym_json(s)},
                     {"path_a", matrix_json(r.path_a)}, {"path_b", matrix_json(r.path_b)}};
                break;
            }
        }
        out.push_back(make_report("invariants", inst + "/deg=" + std::to_string(deg), ok,
                                  "dim (S^" + std::to_string(deg) + " g)^g = " + std::to_string(invariants.size()), w,
                                  start));
    }
}

// --- random classes -----------------------------------------------------------------------

Rational random_coeff(SeededRng& rng)
{
    const long num = rng.uniform(-4, 4);
    const long den = rng.uniform(1, 3);
    Rational q(num == 0 ? 1 : num, den);
    q.canonicalize();
    return q;
}

FormClass random_c1(std::size_t n, SeededRng& rng)
{
    FormClass c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c.add({Mask{1} << i, Mask{1} << j}, Rational(rng.uniform(-3, 3)));
        }
    }
    return c;
}

template <typename Tag>
BiGraded<Tag> random_class(std::size_t n, SeededRng& rng, int p = -1, int q = -1)
{
    BiGraded<Tag> out(n);
    const Mask top = Mask{1} << n;
    for (Mask a = 0; a < top; ++a) {
        for (Mask b = 0; b < top; ++b) {
            if ((p >= 0 && std::popcount(a) != p) || (q >= 0 && std::popcount(b) != q)) {
                continue;
            }
            if (rng.uniform(0, 2) == 0) {
                out.add({a, b}, random_coeff(rng));
            }
        }
    }
    return out;
}

FormClass random_todd(std::size_t n, SeededRng& rng)
{
    FormClass t = FormClass::one(n);
    for (std::size_t p = 1; p <= n; ++p) {
        t += random_class<FormTag>(n, rng, static_cast<int>(p), static_cast<int>(p));
    }
    return t;
}

/// Chern data (c1, r2 c1^2, r3 c1^3, ...) so that every class is a polynomial in c1.
std::vector<FormClass> chern_data_from_c1(const FormClass& c1, SeededRng& rng)
{
    std::vector<FormClass> chern{c1};
    FormClass power = c1;
    for (std::size_t k = 2; k <= c1.n(); ++k) {
        power = wedge(power, c1);
        chern.push_back(power * random_coeff(rng));
    }
    return chern;
}

std::string hodge_instance(std::size_t n, const std::string& tag)
{
    return "dim=" + std::to_string(n) + " " + tag;
}

std::string case_tag(std::size_t k)
{
    std::ostringstream os;
    os << "case=" << std::setw(4) << std::setfill('0') << k;
    return os.str();
}

VerificationReport theorem_b_instance(std::size_t n, const FormClass& c1, const std::string& tag, SeededRng* rng)
{
    const auto start = Clock::now();
    const HodgeModel model = HodgeModel::torus(n);
    const auto kernel_basis = hypothesis_kernel(model, c1);
    std::vector<PolyClass> probes = kernel_basis;
    if (rng && !kernel_basis.empty()) {
        PolyClass combo(n);
        for (const auto& k : kernel_basis) {
            combo += k * random_coeff(*rng);
        }
        probes.push_back(combo);
    }
    for (const auto& alpha : probes) {
        const TheoremBReport r = theorem_b_check(model, alpha, c1);
        if (!r.hypothesis || !r.implication_holds()) {
            json w{{"dim", n}, {"todd", json::parse(to_json(model.todd()))}, {"c1", json::parse(to_json(c1))},
                   {"alpha", json::parse(to_json(alpha))}, {"h", to_string(r.h)}, {"m", json::parse(to_json(r.m))}};
            const std::string why = r.hypothesis ? "CRITICAL: h = 0 but D(alpha) _| v(L) != 0"
                                                 : "kernel element does not satisfy the hypothesis";
            return make_report("theorem-b", hodge_instance(n, tag), false, why, w, start);
        }
    }
    return make_report("theorem-b", hodge_instance(n, tag), true,
                       "kernel dim " + std::to_string(kernel_basis.size()) + ", c1 = " + to_string(c1), {}, start);
}

VerificationReport special_case_instance(const HodgeModel& model, const std::string& tag)
{
    const auto start = Clock::now();
    const std::size_t n = model.n();
    std::size_t checked = 0;
    for (const auto& alpha : poly_basis(n, 1, 1)) {
        const SpecialCaseReport r = special_case_check(model, alpha);
        ++checked;
        if (!r.all_hold()) {
            json w{{"dim", n}, {"todd", json::parse(to_json(model.todd()))}, {"alpha", json::parse(to_json(alpha))},
                   {"difference_identity", r.difference_identity()}, {"h2_identity", r.h2_identity()},
                   {"loci_coincide", r.loci_coincide()}};
            return make_report("special-case", hodge_instance(n, tag), false, "", w, start);
        }
    }
    return make_report("special-case", hodge_instance(n, tag), true, std::to_string(checked) + " basis alphas", {},
                       start);
}

VerificationReport structural_instance(std::size_t n, SeededRng& rng, const std::string& tag)
{
    const auto start = Clock::now();
    const int p1 = static_cast<int>(rng.uniform(0, static_cast<long>(n)));
    const int q1 = static_cast<int>(rng.uniform(0, static_cast<long>(n)));
    const int p2 = static_cast<int>(rng.uniform(0, static_cast<long>(n)));
    const int q2 = static_cast<int>(rng.uniform(0, static_cast<long>(n)));
    const FormClass u = random_class<FormTag>(n, rng, p1, q1);
    const FormClass w = random_class<FormTag>(n, rng, p2, q2);
    const FormClass v = random_class<FormTag>(n, rng);
    const PolyClass alpha = random_class<PolyTag>(n, rng);
    const PolyClass beta = random_class<PolyTag>(n, rng);
    const FormClass c1 = random_c1(n, rng);
    const HodgeModel model(n, random_todd(n, rng));
    PolyClass xi(n);
    FormClass eta(n);
    for (std::size_t j = 0; j < n; ++j) {
        xi.add({0, Mask{1} << j}, random_coeff(rng));
        eta.add({0, Mask{1} << j}, random_coeff(rng));
    }

    const int koszul = ((p1 + q1) * (p2 + q2)) % 2 ? -1 : 1;
    std::vector<std::pair<std::string, bool>> checks{
        {"koszul", wedge(u, w) == wedge(w, u) * Rational(koszul)},
        {"iota-squared-T", contract_T_on_Omega(xi, contract_T_on_Omega(xi, v)).is_zero()},
        {"iota-squared-Omega", contract_Omega_on_T(eta, contract_Omega_on_T(eta, alpha)).is_zero()},
        {"module-Omega-on-T", contract_Omega_on_T(wedge(u, w), alpha) ==
                                  contract_Omega_on_T(u, contract_Omega_on_T(w, alpha))},
        {"module-T-on-Omega", contract_T_on_Omega(wedge(alpha, beta), v) ==
                                  contract_T_on_Omega(alpha, contract_T_on_Omega(beta, v))},
        {"duflo-roundtrip", duflo_inverse(model, duflo(model, alpha)) == alpha &&
                                duflo(model, duflo_inverse(model, alpha)) == alpha},
        {"exp-collapse", contract_exp_atiyah(alpha, c1) == collapse_to_ext(contract_T_on_Omega(alpha, exp_form(c1)))},
    };
    for (const auto& [name, ok] : checks) {
        if (!ok) {
            json wit{{"dim", n}, {"check", name}, {"u", json::parse(to_json(u))}, {"w", json::parse(to_json(w))},
                     {"v", json::parse(to_json(v))}, {"alpha", json::parse(to_json(alpha))},
                     {"beta", json::parse(to_json(beta))}, {"c1", json::parse(to_json(c1))},
                     {"todd", json::parse(to_json(model.todd()))}};
            return make_report("structural", hodge_instance(n, tag), false, name, wit, start);
        }
    }
    return make_report("structural", hodge_instance(n, tag), true, std::to_string(checks.size()) + " identities", {},
                       start);
}

} // namespace

std::vector<VerificationReport> verify_lie(const LieAlgebra& /*alg*/, const std::vector<Representation>& reps,
                                           std::size_t max_degree)
{
    std::vector<VerificationReport> out;
    for (const auto& rep : reps) {
        lie_suites_for_rep(rep, max_degree, out);
    }
    return out;
}

std::vector<VerificationReport> verify_hodge(const HodgeOptions& opts)
{
    const std::size_t n = opts.dim;
    if (n < 1 || n > kMaxHodgeDim) {
        throw std::out_of_range("--dim must be between 1 and " + std::to_string(kMaxHodgeDim));
    }
    std::vector<VerificationReport> out;

    // exhaustive sweeps over basis c1 = a_i (x) b_j
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const FormClass c1 = FormClass::monomial(n, Mask{1} << i, Mask{1} << j);
            const std::string tag = "basis-c1=(" + std::to_string(i) + "," + std::to_string(j) + ")";
            out.push_back(theorem_b_instance(n, c1, tag, nullptr));
            const std::vector<FormClass> chern{c1};
            out.push_back(special_case_instance(HodgeModel(n, todd_datum(n, chern)), tag));
        }
    }

    SeededRng rng(opts.seed);
    for (std::size_t k = 0; k < opts.cases; ++k) {
        const std::string tag = case_tag(k);
        const FormClass c1 = random_c1(n, rng);
        out.push_back(theorem_b_instance(n, c1, tag, &rng));
        const auto chern = chern_data_from_c1(random_c1(n, rng), rng);
        out.push_back(special_case_instance(HodgeModel(n, todd_datum(n, chern)), tag));
        out.push_back(structural_instance(n, rng, tag));
    }
    return out;
}

// --- commands -------------------------------------------------------------------------------

std::size_t degree_cap()
{
    if (const char* env = std::getenv("VERIFIER_MAX_DEGREE")) {
        try {
            const long v = std::stol(env);
            if (v >= 0 && v <= 8) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception&) {
        }
        throw InputError(std::string("VERIFIER_MAX_DEGREE must be an integer in 0..8, got '") + env + "'");
    }
    return kDefaultDegreeCap;
}

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int run_verify_lie(const LieCommand& cmd, std::ostream& out, std::ostream& err)
{
    try {
        const std::size_t cap = degree_cap();
        const std::size_t max_degree = cmd.max_degree.value_or(cap);
        if (max_degree > cap) {
            err << "error: --max-degree " << max_degree << " exceeds the degree cap " << cap
                << " (raise it with VERIFIER_MAX_DEGREE)\n";
            return kExitUsage;
        }
        if (cmd.algebra.empty() == cmd.algebra_file.empty()) {
            err << "error: give exactly one of --algebra or --algebra-file\n";
            return kExitUsage;
        }
        const LieAlgebra alg = cmd.algebra_file.empty() ? catalog_algebra(cmd.algebra) : load_lie_algebra(cmd.algebra_file);
        std::vector<Representation> reps;
        if (!cmd.rep_file.empty()) {
            reps.push_back(representation_from_json(alg, read_file(cmd.rep_file)));
        } else if (cmd.rep == "all") {
            reps = catalog_representations(alg);
        } else {
            reps.push_back(catalog_representation(alg, cmd.rep));
        }
        auto reports = verify_lie(alg, reps, max_degree);
        const int code = exit_code(reports);
        emit_reports(std::move(reports), out, err, cmd.timing);
        return code;
    } catch (const std::invalid_argument& e) {
        // InputError, JacobiViolation, AntisymmetryViolation, BracketMismatch
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run_verify_hodge(const HodgeCommand& cmd, std::ostream& out, std::ostream& err)
{
    const auto& o = cmd.options;
    if (o.dim < 1 || o.dim > kMaxHodgeDim) {
        err << "error: --dim must be between 1 and " << kMaxHodgeDim << ", got " << o.dim << '\n';
        return kExitUsage;
    }
    auto reports = verify_hodge(o);
    const int code = exit_code(reports);
    emit_reports(std::move(reports), out, err, cmd.timing);
    return code;
}

int run_series(const SeriesCommand& cmd, std::ostream& out, std::ostream& err)
{
    if (cmd.weight > kMaxSeriesWeight) {
        err << "error: --weight must be at most " << kMaxSeriesWeight << '\n';
        return kExitUsage;
    }
    GradedSeries s;
    if (cmd.kind == "todd") {
        s = todd(cmd.weight);
    } else if (cmd.kind == "sqrt-todd") {
        s = series_sqrt(todd(cmd.weight));
    } else if (cmd.kind == "inv-sqrt-todd") {
        s = series_inv(series_sqrt(todd(cmd.weight)));
    } else if (cmd.kind == "ch") {
        s = chern_character(cmd.rank, cmd.weight);
    } else if (cmd.kind == "mukai") {
        s = mukai_vector(cmd.rank, cmd.weight);
    } else {
        err << "error: unknown series kind '" << cmd.kind << "' (known: todd, sqrt-todd, inv-sqrt-todd, ch, mukai)\n";
        return kExitUsage;
    }
    if (cmd.format == "json") {
        json doc = json::parse(to_json(s));
        doc["kind"] = cmd.kind;
        doc["weight"] = cmd.weight;
        if (cmd.kind == "ch" || cmd.kind == "mukai") {
            doc["rank"] = cmd.rank;
        }
        out << doc.dump() << '\n';
    } else if (cmd.format == "text") {
        out << to_string(s) << '\n';
    } else {
        err << "error: unknown format '" << cmd.format << "' (text, json)\n";
        return kExitUsage;
    }
    return kExitPass;
}

} // namespace duflo
