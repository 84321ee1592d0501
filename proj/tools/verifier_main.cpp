#include <duflo/verifier.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for the Lie diagram, the Hodge-model contraction identities and Chern series"};
    app.require_subcommand(1);

    duflo::LieCommand lie;
    std::size_t max_degree = 0;
    auto* lie_cmd = app.add_subcommand("verify-lie", "check the Lie diagram and PBW identities on a representation");
    auto* alg_opt = lie_cmd->add_option("--algebra", lie.algebra, "catalog algebra: abelian<n>, heisenberg3, sl2, gl2");
    auto* file_opt = lie_cmd->add_option("--algebra-file", lie.algebra_file, "structure constants as JSON")
                         ->check(CLI::ExistingFile);
    alg_opt->excludes(file_opt);
    lie_cmd->add_option("--rep", lie.rep, "catalog representation name, or all")->capture_default_str();
    lie_cmd->add_option("--rep-file", lie.rep_file, "representation matrices as JSON")->check(CLI::ExistingFile);
    auto* deg_opt = lie_cmd->add_option("--max-degree", max_degree, "largest symmetric degree to check");
    lie_cmd->add_flag("--timing", lie.timing, "include elapsed_ms in every report");

    duflo::HodgeCommand hodge;
    auto* hodge_cmd = app.add_subcommand("verify-hodge", "check contraction identities in the bi-exterior model");
    hodge_cmd->add_option("--dim", hodge.options.dim, "model dimension (1..4)")->capture_default_str();
    hodge_cmd->add_option("--seed", hodge.options.seed, "seed for the random cases")->capture_default_str();
    hodge_cmd->add_option("--cases", hodge.options.cases, "number of random cases")->capture_default_str();
    hodge_cmd->add_flag("--timing", hodge.timing, "include elapsed_ms in every report");

    duflo::SeriesCommand series;
    auto* series_cmd = app.add_subcommand("series", "print a characteristic-class series in exact form");
    series_cmd->add_option("kind", series.kind, "todd | sqrt-todd | inv-sqrt-todd | ch | mukai")->required();
    series_cmd->add_option("--weight", series.weight, "truncation weight")->capture_default_str();
    series_cmd->add_option("--rank", series.rank, "rank for ch and mukai")->capture_default_str();
    series_cmd->add_option("--format", series.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return duflo::kExitUsage;
    }

    if (*lie_cmd) {
        if (*deg_opt) {
            lie.max_degree = max_degree;
        }
        return duflo::run_verify_lie(lie, std::cout, std::cerr);
    }
    if (*hodge_cmd) {
        return duflo::run_verify_hodge(hodge, std::cout, std::cerr);
    }
    return duflo::run_series(series, std::cout, std::cerr);
}
