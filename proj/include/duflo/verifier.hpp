#ifndef DUFLO_VERIFIER_HPP
#define DUFLO_VERIFIER_HPP

#include <duflo/lie.hpp>
#include <duflo/pbw.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace duflo {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct VerificationReport {
    std::string suite;
    std::string instance;
    Status status = Status::pass;
    std::string detail;
    /// JSON literal with the exact failing input; always set on fail.
    std::string witness;
    double elapsed_ms = 0;

    /// One JSON object, no trailing newline. Timing is included only on request
    /// so that the default stream is byte-for-byte reproducible.
    [[nodiscard]] std::string to_json_line(bool with_timing = false) const;
};

/// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// 0 iff no report has fail status.
int exit_code(const std::vector<VerificationReport>& reports);

/// Sorts by (suite, instance), writes one JSON line per report to `out` and a
/// per-suite summary to `summary`.
void emit_reports(std::vector<VerificationReport> reports, std::ostream& out, std::ostream& summary,
                  bool with_timing = false);

/// mt19937_64 with draws reduced by plain modulo, which keeps sequences
/// identical across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    long uniform(long lo, long hi) { return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

// --- suites ------------------------------------------------------------------------

std::vector<VerificationReport> verify_lie(const LieAlgebra& alg, const std::vector<Representation>& reps,
                                           std::size_t max_degree);

struct HodgeOptions {
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    std::size_t cases = 10;
};

inline constexpr std::size_t kMaxHodgeDim = 4;

/// Throws std::out_of_range when dim is outside 1..kMaxHodgeDim.
std::vector<VerificationReport> verify_hodge(const HodgeOptions& opts);

// --- command runners (used by the CLI) ------------------------------------------------------

struct LieCommand {
    std::string algebra;      ///< catalog name, or empty when algebra_file is set
    std::string algebra_file;
    std::string rep = "all";  ///< catalog rep name or "all"
    std::string rep_file;
    std::optional<std::size_t> max_degree;
    bool timing = false;
};

/// Degree cap, overridden by the VERIFIER_MAX_DEGREE environment variable.
std::size_t degree_cap();

int run_verify_lie(const LieCommand& cmd, std::ostream& out, std::ostream& err);

struct HodgeCommand {
    HodgeOptions options;
    bool timing = false;
};

int run_verify_hodge(const HodgeCommand& cmd, std::ostream& out, std::ostream& err);

inline constexpr unsigned kMaxSeriesWeight = 12;

struct SeriesCommand {
    std::string kind;  ///< todd | sqrt-todd | inv-sqrt-todd | ch | mukai
    unsigned weight = 6;
    unsigned rank = 1;
    std::string format = "text";
};

int run_series(const SeriesCommand& cmd, std::ostream& out, std::ostream& err);

} // namespace duflo

#endif
