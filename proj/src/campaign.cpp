#include "qsim/campaign.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qsim::campaign {

namespace {

using nlohmann::json;

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string hex_message(const Message& msg) {
    std::string out;
    for (const BitString& b : msg) out += b.hex();
    return out;
}

// Per-trial stream layout: derive(t) is the trial root; its substreams are
// 0 = oracle construction, 1 = attack randomness, 2 = target selection.
SplitRng trial_rng(const Config& cfg, unsigned t) { return SplitRng(cfg.seed).derive(t); }

TrialReport feistel_trial(const Config& cfg, unsigned t) {
    TrialReport r;
    const SplitRng root = trial_rng(cfg, t);
    SplitRng build = root.derive(0);
    SplitRng attack = root.derive(1);

    const bool feistel_arm = (t % 2) == 0;
    PointOracle oracle = feistel_arm ? make_feistel_oracle(random_feistel(cfg.n, build))
                                     : make_perm_oracle(2 * cfg.n, build);
    const Verdict verdict = feistel_distinguisher(oracle, cfg.n, cfg.method, attack);

    r.ground_truth = feistel_arm ? "feistel" : "random-permutation";
    r.guess = verdict.guess == Guess::feistel ? "feistel" : "random-permutation";
    r.reason = verdict.reason == VerdictReason::rank_deficient ? "rank-deficient"
               : verdict.reason == VerdictReason::collision_check_passed
                   ? "collision-check-passed"
                   : "collision-check-failed";
    r.correct = (verdict.guess == Guess::feistel) == feistel_arm;
    r.subroutine_runs = oracle.ledger().subroutine_runs();
    r.oracle_units = oracle.ledger().oracle_units();
    r.classical_queries = oracle.ledger().classical_count();
    return r;
}

TrialReport cbc_forge_trial(const Config& cfg, unsigned t) {
    TrialReport r;
    const SplitRng root = trial_rng(cfg, t);
    SplitRng build = root.derive(0);
    SplitRng attack = root.derive(1);
    SplitRng target = root.derive(2);

    CbcOracle oracle(CbcSpec(cfg.ell, random_permutation(cfg.n, build)));
    Message beta_prefix;
    for (unsigned i = 0; i < cfg.prefix_len; ++i)
        beta_prefix.emplace_back(cfg.n, target.bits(cfg.n));

    r.ground_truth = "cbc";
    try {
        const Forgery forgery = cbc_forge(oracle, beta_prefix, cfg.method, attack);
        const ForgeryCheck check = verify_forgery(oracle, forgery);
        r.guess = "forged";
        r.reason = check.ok() ? "accepted"
                 : !check.tag_valid ? "tag-mismatch"
                 : !check.never_queried ? "message-was-queried"
                 : !check.zero_block_discipline ? "zero-block-violation"
                                                : "zero-tail-block";
        r.forgery_valid = check.tag_valid;
        r.correct = check.ok();
    } catch (const SimonFailure&) {
        r.aborted = true;
        r.guess = "aborted";
        r.reason = "simon-failure";
    } catch (const PrefixSetupFailure&) {
        r.aborted = true;
        r.guess = "aborted";
        r.reason = "prefix-setup-failure";
    }
    r.subroutine_runs = oracle.ledger().subroutine_runs();
    r.oracle_units = oracle.ledger().oracle_units();
    r.classical_queries = oracle.ledger().classical_count();
    return r;
}

TrialReport cbc2_trial(const Config& cfg, unsigned t) {
    TrialReport r;
    const SplitRng root = trial_rng(cfg, t);
    SplitRng build = root.derive(0);
    SplitRng attack = root.derive(1);

    const bool cbc_arm = (t % 2) == 0;
    PointOracle oracle = cbc_arm
        ? make_cbc2_oracle(CbcSpec(2, random_permutation(cfg.n, build)))
        : make_random_function_oracle(2 * cfg.n, cfg.n, build);
    const Verdict verdict = cbc2_prp_distinguisher(oracle, cfg.n, cfg.method, attack);

    r.ground_truth = cbc_arm ? "cbc2" : "random-function";
    r.guess = verdict.guess == Guess::feistel ? "cbc2" : "random-function";
    r.reason = verdict.reason == VerdictReason::rank_deficient ? "rank-deficient"
               : verdict.reason == VerdictReason::collision_check_passed
                   ? "collision-check-passed"
                   : "collision-check-failed";
    r.correct = (verdict.guess == Guess::feistel) == cbc_arm;
    r.subroutine_runs = oracle.ledger().subroutine_runs();
    r.oracle_units = oracle.ledger().oracle_units();
    r.classical_queries = oracle.ledger().classical_count();
    return r;
}

TrialReport simon_demo_trial(const Config& cfg, unsigned t) {
    TrialReport r;
    const SplitRng root = trial_rng(cfg, t);
    SplitRng build = root.derive(0);

    const TruthTable f = random_function(cfg.n, cfg.n, build);
    const simon::SimonDistribution spectral = simon::spectral_distribution(f);
    const simon::SimonDistribution statevec = simon::statevector_distribution(f);
    double max_diff = 0.0;
    for (std::size_t j = 0; j < spectral.probs.size(); ++j)
        max_diff = std::max(max_diff, std::abs(spectral.probs[j] - statevec.probs[j]));

    r.ground_truth = "random-function";
    r.guess = "compared";
    r.reason = "spectral-vs-statevector";
    r.metric = max_diff;
    r.correct = max_diff < 1e-12;
    if (cfg.n <= 6)
        r.extra = {{"spectral", spectral.probs}, {"statevector", statevec.probs}};
    return r;
}

TrialReport baseline_gap_trial(const Config& cfg, unsigned t) {
    TrialReport r;
    const unsigned m = cfg.n;
    const SplitRng root = trial_rng(cfg, t);
    SplitRng build = root.derive(0);
    SplitRng attack = root.derive(1);
    SplitRng target = root.derive(2);

    // hidden shift with the top coordinate pinned to 1
    const BitString s(m, (1u << (m - 1)) | target.bits(m - 1));
    const TruthTable f = simon_promise_function(m, s, build);

    SplitRng classical_rng = attack.derive(0);
    const BaselineResult baseline = classical_simon_baseline(f, classical_rng);
    r.metric = static_cast<double>(baseline.queries);
    r.classical_queries = baseline.queries;
    r.correct = baseline.s == s;

    if (m <= 14) {  // quantum side, when the sampler cap allows
        SplitRng quantum_rng = attack.derive(1);
        const simon::SolveResult res =
            simon::solve_hidden_shift(f, m - 1, true, 4 * m, cfg.method, quantum_rng);
        r.subroutine_runs = res.samples_drawn;
        r.correct = r.correct && res.solved && *res.s == s;
        r.guess = res.solved ? "recovered" : "rank-deficient";
    } else {
        r.guess = "classical-only";
    }
    r.ground_truth = "promise-instance";
    r.reason = "collision-search";
    return r;
}

TrialReport run_one_trial(const Config& cfg, unsigned t) {
    const double t0 = now_ms();
    TrialReport r;
    try {
        switch (cfg.experiment) {
            case Experiment::feistel_distinguish: r = feistel_trial(cfg, t); break;
            case Experiment::cbc_forge: r = cbc_forge_trial(cfg, t); break;
            case Experiment::cbc2_distinguish: r = cbc2_trial(cfg, t); break;
            case Experiment::simon_demo: r = simon_demo_trial(cfg, t); break;
            case Experiment::baseline_gap: r = baseline_gap_trial(cfg, t); break;
        }
    } catch (const std::exception& e) {  // nothing may escape the parallel loop
        r.aborted = true;
        r.guess = "aborted";
        r.reason = e.what();
    }
    r.trial = t;
    r.stream = t;
    r.wall_ms = now_ms() - t0;
    return r;
}

Summary summarize(const std::vector<TrialReport>& reports) {
    Summary s;
    s.trials = static_cast<unsigned>(reports.size());
    std::vector<double> metrics;
    double run_sum = 0.0, classical_sum = 0.0;
    for (const TrialReport& r : reports) {
        if (r.aborted) {
            ++s.aborted;
            continue;
        }
        ++s.scored;
        if (r.correct) ++s.correct;
        auto& arm = s.arms[r.ground_truth.empty() ? "all" : r.ground_truth];
        arm[0] += r.correct ? 1 : 0;
        arm[1] += 1;
        run_sum += static_cast<double>(r.subroutine_runs);
        classical_sum += static_cast<double>(r.classical_queries);
        s.max_subroutine_runs = std::max(s.max_subroutine_runs, r.subroutine_runs);
        s.max_classical = std::max(s.max_classical, r.classical_queries);
        metrics.push_back(r.metric);
        s.max_metric = std::max(s.max_metric, r.metric);
    }
    if (s.scored > 0) {
        s.success_rate = static_cast<double>(s.correct) / s.scored;
        s.mean_subroutine_runs = run_sum / s.scored;
        s.mean_classical = classical_sum / s.scored;
        std::tie(s.wilson_lo, s.wilson_hi) = wilson95(s.correct, s.scored);
        std::sort(metrics.begin(), metrics.end());
        const std::size_t mid = metrics.size() / 2;
        s.median_metric = metrics.size() % 2 ? metrics[mid]
                                             : 0.5 * (metrics[mid - 1] + metrics[mid]);
    }
    return s;
}

}  // namespace

void validate(const Config& cfg) {
    const unsigned n = cfg.n;
    if (cfg.method == simon::Method::statevector && n > 8)
        throw UsageError("statevector method supports n <= 8");
    switch (cfg.experiment) {
        case Experiment::feistel_distinguish:
            if (n < 1 || n > 12) throw UsageError("feistel-distinguish needs 1 <= n <= 12");
            break;
        case Experiment::cbc_forge:
            if (n < 1 || n > 13) throw UsageError("cbc-forge needs 1 <= n <= 13");
            if (cfg.ell < 3 || cfg.ell > 16) throw UsageError("cbc-forge needs 3 <= ell <= 16");
            if (cfg.prefix_len < 1 || cfg.prefix_len > cfg.ell - 2)
                throw UsageError("cbc-forge needs 1 <= prefix-len <= ell - 2");
            break;
        case Experiment::cbc2_distinguish:
            if (n < 1 || n > 10) throw UsageError("cbc2-distinguish needs 1 <= n <= 10");
            break;
        case Experiment::simon_demo:
            if (n < 1 || n > 7) throw UsageError("simon-demo needs 1 <= n <= 7");
            break;
        case Experiment::baseline_gap:
            if (n < 2 || n > 20) throw UsageError("baseline-gap needs 2 <= n <= 20");
            break;
    }
    if (cfg.threads < 0) throw UsageError("threads must be >= 0");
}

Result run_campaign(const Config& cfg) {
    validate(cfg);
    Result res;
    res.reports.resize(cfg.trials);
    const int nt = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
    const std::int64_t trials = cfg.trials;
#pragma omp parallel for num_threads(nt) schedule(dynamic)
    for (std::int64_t t = 0; t < trials; ++t)
        res.reports[static_cast<std::size_t>(t)] = run_one_trial(cfg, static_cast<unsigned>(t));
    res.summary = summarize(res.reports);
    return res;
}

std::pair<double, double> wilson95(unsigned k, unsigned n) {
    if (n == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double p = static_cast<double>(k) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2) / (1 + z2n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2n / (4 * n)) / (1 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

nlohmann::json ledger_json(const QueryLedger& ledger) {
    json j;
    j["classical"] = json::array();
    for (const Message& msg : ledger.classical()) j["classical"].push_back(hex_message(msg));
    j["quantum"] = json::array();
    for (const QuantumQueryRecord& rec : ledger.quantum()) {
        json supports = json::array();
        for (const MessageTemplate& t : rec.supports) {
            json blocks = json::array();
            for (const auto& b : t.blocks) blocks.push_back(b ? b->hex() : "*");
            supports.push_back(blocks);
        }
        j["quantum"].push_back(supports);
    }
    j["subroutine_runs"] = ledger.subroutine_runs();
    j["oracle_units"] = ledger.oracle_units();
    return j;
}

nlohmann::json report_json(const Config& cfg, const Result& res) {
    json j;
    j["experiment"] = to_string(cfg.experiment);
    // execution policy (threads, output routing) is deliberately not echoed
    j["config"] = {{"n", cfg.n},     {"ell", cfg.ell},   {"prefix_len", cfg.prefix_len},
                   {"trials", cfg.trials}, {"seed", cfg.seed}, {"method", to_string(cfg.method)}};
    const Summary& s = res.summary;
    j["summary"] = {{"trials", s.trials},
                    {"scored", s.scored},
                    {"correct", s.correct},
                    {"aborted", s.aborted},
                    {"success_rate", s.success_rate},
                    {"wilson95", {s.wilson_lo, s.wilson_hi}},
                    {"mean_subroutine_runs", s.mean_subroutine_runs},
                    {"max_subroutine_runs", s.max_subroutine_runs},
                    {"mean_classical_queries", s.mean_classical},
                    {"max_classical_queries", s.max_classical},
                    {"median_metric", s.median_metric},
                    {"max_metric", s.max_metric}};
    json arms = json::object();
    for (const auto& [name, counts] : s.arms)
        arms[name] = {{"correct", counts[0]}, {"scored", counts[1]}};
    j["summary"]["arms"] = arms;

    j["trials_detail"] = json::array();
    for (const TrialReport& r : res.reports) {
        json tr = {{"trial", r.trial},
                   {"stream", r.stream},
                   {"ground_truth", r.ground_truth},
                   {"guess", r.guess},
                   {"reason", r.reason},
                   {"correct", r.correct},
                   {"aborted", r.aborted},
                   {"forgery_valid", r.forgery_valid},
                   {"subroutine_runs", r.subroutine_runs},
                   {"oracle_units", r.oracle_units},
                   {"classical_queries", r.classical_queries},
                   {"metric", r.metric},
                   {"wall_ms", r.wall_ms}};
        if (!r.extra.is_null()) tr["extra"] = r.extra;
        j["trials_detail"].push_back(tr);
    }
    return j;
}

std::string report_csv(const Config&, const Result& res) {
    std::ostringstream out;
    out << "trial,stream,ground_truth,guess,reason,correct,aborted,forgery_valid,"
           "subroutine_runs,oracle_units,classical_queries,metric,wall_ms\n";
    for (const TrialReport& r : res.reports) {
        out << r.trial << ',' << r.stream << ',' << r.ground_truth << ',' << r.guess << ','
            << r.reason << ',' << (r.correct ? 1 : 0) << ',' << (r.aborted ? 1 : 0) << ','
            << (r.forgery_valid ? 1 : 0) << ',' << r.subroutine_runs << ',' << r.oracle_units
            << ',' << r.classical_queries << ',' << r.metric << ',' << r.wall_ms << '\n';
    }
    return out.str();
}

void emit_report(const Config& cfg, const Result& res) {
    std::string body = cfg.format == Format::json ? report_json(cfg, res).dump(2) + "\n"
                                                  : report_csv(cfg, res);
    if (cfg.out == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << body;
    if (!f) throw std::runtime_error("write failed: " + cfg.out);
}

std::string check_thresholds(const Config& cfg, const Result& res) {
    const Summary& s = res.summary;
    std::ostringstream why;
    auto arm_rate = [&](const std::string& name) -> double {
        const auto it = s.arms.find(name);
        if (it == s.arms.end() || it->second[1] == 0) return -1.0;
        return static_cast<double>(it->second[0]) / it->second[1];
    };
    switch (cfg.experiment) {
        case Experiment::feistel_distinguish: {
            const double feistel = arm_rate("feistel");
            const double perm = arm_rate("random-permutation");
            const double perm_floor = 1.0 - 4.0 * std::ldexp(1.0, -static_cast<int>(cfg.n));
            if (feistel < 0.99)
                why << "feistel arm rate " << feistel << " below 0.99";
            else if (perm < perm_floor)
                why << "random-permutation arm rate " << perm << " below " << perm_floor;
            break;
        }
        case Experiment::cbc_forge: {
            const double abort_rate =
                s.trials ? static_cast<double>(s.aborted) / s.trials : 0.0;
            if (s.scored && s.correct != s.scored)
                why << "only " << s.correct << "/" << s.scored << " forgeries verified";
            else if (abort_rate >= 0.01)
                why << "abort rate " << abort_rate << " not below 0.01";
            break;
        }
        case Experiment::cbc2_distinguish: {
            const double cbc = arm_rate("cbc2");
            const double rnd = arm_rate("random-function");
            if (cbc < 0.99)
                why << "cbc2 arm rate " << cbc << " below 0.99";
            else if (rnd < 0.90)
                why << "random-function arm rate " << rnd << " below 0.90";
            break;
        }
        case Experiment::simon_demo:
            if (s.max_metric >= 1e-12)
                why << "max per-outcome diff " << s.max_metric << " not below 1e-12";
            break;
        case Experiment::baseline_gap: {
            const double floor = std::ldexp(1.0, static_cast<int>(cfg.n) / 2 - 1);
            if (s.median_metric < floor)
                why << "median classical queries " << s.median_metric << " below " << floor;
            else if (cfg.n <= 14 && s.max_subroutine_runs > 4 * cfg.n)
                why << "subroutine runs " << s.max_subroutine_runs << " above " << 4 * cfg.n;
            break;
        }
    }
    return why.str();
}

const char* to_string(Experiment e) {
    switch (e) {
        case Experiment::feistel_distinguish: return "feistel-distinguish";
        case Experiment::cbc_forge: return "cbc-forge";
        case Experiment::cbc2_distinguish: return "cbc2-distinguish";
        case Experiment::simon_demo: return "simon-demo";
        case Experiment::baseline_gap: return "baseline-gap";
    }
    return "?";
}

const char* to_string(simon::Method m) {
    return m == simon::Method::spectral ? "spectral" : "statevector";
}

Experiment experiment_from_string(const std::string& s) {
    if (s == "feistel-distinguish") return Experiment::feistel_distinguish;
    if (s == "cbc-forge") return Experiment::cbc_forge;
    if (s == "cbc2-distinguish") return Experiment::cbc2_distinguish;
    if (s == "simon-demo") return Experiment::simon_demo;
    if (s == "baseline-gap") return Experiment::baseline_gap;
    throw UsageError("unknown experiment: " + s);
}

simon::Method method_from_string(const std::string& s) {
    if (s == "spectral") return simon::Method::spectral;
    if (s == "statevector") return simon::Method::statevector;
    throw UsageError("unknown method: " + s);
}

}  // namespace qsim::campaign
