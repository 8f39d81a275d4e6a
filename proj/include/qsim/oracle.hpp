#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qsim/bitstring.hpp"
#include "qsim/cbc.hpp"
#include "qsim/feistel.hpp"
#include "qsim/truth_table.hpp"

namespace qsim {

// Support pattern of one superposition query: per block either a fixed
// value or a wildcard. blocks[0] is the first (leftmost) message block.
struct MessageTemplate {
    unsigned block_width = 1;
    std::vector<std::optional<BitString>> blocks;

    bool covers(std::span<const BitString> message) const;
    bool has_zero_fixed_block() const;
};

// One oracle call made in superposition; the support may span several
// templates (one per fixed prefix branch).
struct QuantumQueryRecord {
    std::vector<MessageTemplate> supports;
};

// Account of everything an attack asked the oracle. Classical queries are
// concrete points (stored as block sequences); quantum queries are support
// records, one per derived-oracle build. Subroutine runs are charged
// separately: each run of the Simon subroutine consumes `units` underlying
// oracle invocations (2 when f is built from a Feistel/permutation oracle,
// 1 for CBC-derived functions).
class QueryLedger {
public:
    void record_classical(Message point);
    void record_quantum(QuantumQueryRecord rec);
    void charge_subroutine_run(unsigned oracle_units);

    std::size_t classical_count() const { return classical_.size(); }
    std::size_t quantum_count() const { return quantum_.size(); }
    std::uint64_t subroutine_runs() const { return subroutine_runs_; }
    std::uint64_t oracle_units() const { return oracle_units_; }

    const std::vector<Message>& classical() const { return classical_; }
    const std::vector<QuantumQueryRecord>& quantum() const { return quantum_; }

private:
    mutable std::mutex mu_;  // appends serialized; reads once the attack is done
    std::vector<Message> classical_;
    std::vector<QuantumQueryRecord> quantum_;
    std::uint64_t subroutine_runs_ = 0;
    std::uint64_t oracle_units_ = 0;
};

// Ground truth behind a blinded oracle; consulted by the harness only after
// a verdict is in.
enum class HiddenKind { feistel_network, random_permutation, cbc_mac, random_function };

// A derived Simon instance: the materialized table of f together with the
// accounting hook back into the parent oracle's ledger.
struct DerivedSimonOracle {
    TruthTable table;
    std::vector<MessageTemplate> supports;
    QueryLedger* ledger = nullptr;
    unsigned units_per_run = 1;

    void charge_run() const {
        if (ledger) ledger->charge_subroutine_run(units_per_run);
    }
};

// Opaque point-function oracle (Feistel network vs. random permutation,
// two-block CBC vs. random function). Attack code may evaluate points and
// build derived Simon functions; the implementation and kind stay hidden.
class PointOracle {
public:
    using Fn = std::function<std::uint32_t(std::uint32_t)>;

    PointOracle(unsigned in_width, unsigned out_width, HiddenKind kind, Fn fn);

    BitString eval(const BitString& x);  // classical query, recorded

    unsigned in_width() const { return in_width_; }
    unsigned out_width() const { return out_width_; }
    QueryLedger& ledger() { return ledger_; }
    const QueryLedger& ledger() const { return ledger_; }

    HiddenKind scoring_kind() const { return kind_; }  // harness use only

private:
    friend DerivedSimonOracle build_simon_f(PointOracle&, const BitString&, const BitString&);
    friend DerivedSimonOracle build_cbc2_g1(PointOracle&, const BitString&, const BitString&);

    std::uint32_t raw(std::uint32_t x) const { return fn_(x); }

    unsigned in_width_;
    unsigned out_width_;
    HiddenKind kind_;
    Fn fn_;
    QueryLedger ledger_;
};

PointOracle make_feistel_oracle(FeistelSpec spec);
PointOracle make_perm_oracle(unsigned width, SplitRng& rng);
// ell == 2 CBC presented as an opaque 2n -> n map
PointOracle make_cbc2_oracle(CbcSpec spec);
PointOracle make_random_function_oracle(unsigned in_width, unsigned out_width, SplitRng& rng);

// MAC oracle for the forgery setting: concrete messages in, tags out.
class CbcOracle {
public:
    explicit CbcOracle(CbcSpec spec);

    BitString query(std::span<const BitString> message);  // classical, recorded

    unsigned block_width() const { return spec_.block_width(); }
    unsigned block_count() const { return spec_.block_count; }
    QueryLedger& ledger() { return ledger_; }
    const QueryLedger& ledger() const { return ledger_; }

    const CbcSpec& scoring_spec() const { return spec_; }  // verifier use only

private:
    friend DerivedSimonOracle build_simon_g(CbcOracle&, unsigned,
                                            std::span<const BitString>,
                                            std::span<const BitString>);

    CbcSpec spec_;
    QueryLedger ledger_;
};

struct UnsupportedPrefix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// f(b||a) = W(a||alpha_b) ^ alpha_b where W is the top half of the oracle
// output. Materializes all 2^{n+1} entries; the ledger gets one quantum
// record whose support is {*||alpha, *||beta}.
DerivedSimonOracle build_simon_f(PointOracle& v, const BitString& alpha, const BitString& beta);

// g_j(b||x) = MAC(prefix_b || 0^{(j-1)n} || x || 0^{(ell-k-j)n}). Requires
// k <= ell-2 so every support template keeps at least one all-zero block.
DerivedSimonOracle build_simon_g(CbcOracle& cbc, unsigned j,
                                 std::span<const BitString> prefix_a,
                                 std::span<const BitString> prefix_b);

// ell == 2 variant used by the PRP distinguisher: g1(b||x) = O(alpha_b || x).
// No zero-block discipline applies here (nothing is forged from it).
DerivedSimonOracle build_cbc2_g1(PointOracle& oracle, const BitString& alpha0,
                                 const BitString& alpha1);

}  // namespace qsim
