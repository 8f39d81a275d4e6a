#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsim/attacks.hpp"

namespace qsim::campaign {

enum class Experiment { feistel_distinguish, cbc_forge, cbc2_distinguish, simon_demo, baseline_gap };
enum class Format { json, csv };

struct Config {
    Experiment experiment = Experiment::feistel_distinguish;
    unsigned n = 6;
    unsigned ell = 3;        // cbc-forge block count
    unsigned prefix_len = 1; // cbc-forge target prefix length k
    unsigned trials = 100;
    std::uint64_t seed = 1;
    simon::Method method = simon::Method::spectral;
    int threads = 0;         // 0: OpenMP runtime default (honors OMP_NUM_THREADS)
    std::string out = "-";
    Format format = Format::json;
    bool assert_thresholds = false;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rejects invalid parameter combinations before any work is done.
void validate(const Config& cfg);

struct TrialReport {
    unsigned trial = 0;
    std::uint64_t stream = 0;
    std::string ground_truth;
    std::string guess;
    std::string reason;
    bool correct = false;
    bool aborted = false;
    bool forgery_valid = false;
    std::uint64_t subroutine_runs = 0;
    std::uint64_t oracle_units = 0;
    std::uint64_t classical_queries = 0;
    double metric = 0.0;   // experiment-specific (max law diff, baseline queries, ...)
    double wall_ms = 0.0;  // excluded from determinism guarantees
    nlohmann::json extra;  // optional payload (demo distributions)
};

struct Summary {
    unsigned trials = 0;
    unsigned scored = 0;  // non-aborted
    unsigned correct = 0;
    unsigned aborted = 0;
    double success_rate = 0.0;
    double wilson_lo = 0.0, wilson_hi = 0.0;
    std::map<std::string, std::array<unsigned, 2>> arms;  // name -> {correct, scored}
    double mean_subroutine_runs = 0.0;
    std::uint64_t max_subroutine_runs = 0;
    double mean_classical = 0.0;
    std::uint64_t max_classical = 0;
    double median_metric = 0.0;
    double max_metric = 0.0;
};

struct Result {
    std::vector<TrialReport> reports;
    Summary summary;
};

// Runs cfg.trials independent trials, parallelized over trials. Trial t
// draws all randomness from stream derive(t) of the root seed, so results
// are bit-identical for any thread count.
Result run_campaign(const Config& cfg);

// 95% Wilson score interval for k successes in n trials.
std::pair<double, double> wilson95(unsigned k, unsigned n);

nlohmann::json report_json(const Config& cfg, const Result& res);
std::string report_csv(const Config& cfg, const Result& res);
void emit_report(const Config& cfg, const Result& res);  // out == "-" writes stdout

// Returns an empty string when the campaign meets the experiment's
// thresholds, else a description of the failure (--assert exits 3 on it).
std::string check_thresholds(const Config& cfg, const Result& res);

nlohmann::json ledger_json(const QueryLedger& ledger);

const char* to_string(Experiment e);
const char* to_string(simon::Method m);
Experiment experiment_from_string(const std::string& s);
simon::Method method_from_string(const std::string& s);

}  // namespace qsim::campaign
