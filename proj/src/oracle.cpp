#include "qsim/oracle.hpp"

#include <memory>

namespace qsim {

bool MessageTemplate::covers(std::span<const BitString> message) const {
    if (message.size() != blocks.size()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (message[i].width() != block_width) return false;
        if (blocks[i] && !(*blocks[i] == message[i])) return false;
    }
    return true;
}

bool MessageTemplate::has_zero_fixed_block() const {
    for (const auto& b : blocks)
        if (b && b->is_zero()) return true;
    return false;
}

void QueryLedger::record_classical(Message point) {
    std::lock_guard<std::mutex> lock(mu_);
    classical_.push_back(std::move(point));
}

void QueryLedger::record_quantum(QuantumQueryRecord rec) {
    std::lock_guard<std::mutex> lock(mu_);
    quantum_.push_back(std::move(rec));
}

void QueryLedger::charge_subroutine_run(unsigned oracle_units) {
    std::lock_guard<std::mutex> lock(mu_);
    subroutine_runs_ += 1;
    oracle_units_ += oracle_units;
}

PointOracle::PointOracle(unsigned in_width, unsigned out_width, HiddenKind kind, Fn fn)
    : in_width_(in_width), out_width_(out_width), kind_(kind), fn_(std::move(fn)) {
    if (in_width < 1 || in_width > BitString::kMaxWidth || out_width < 1 ||
        out_width > BitString::kMaxWidth)
        throw std::invalid_argument("PointOracle width out of range");
}

BitString PointOracle::eval(const BitString& x) {
    if (x.width() != in_width_) throw std::invalid_argument("PointOracle eval width mismatch");
    ledger_.record_classical({x});
    return {out_width_, fn_(x.bits())};
}

PointOracle make_feistel_oracle(FeistelSpec spec) {
    const unsigned w = 2 * spec.half_width();
    auto sp = std::make_shared<FeistelSpec>(std::move(spec));
    return {w, w, HiddenKind::feistel_network,
            [sp](std::uint32_t x) { return feistel_eval_raw(*sp, x); }};
}

PointOracle make_perm_oracle(unsigned width, SplitRng& rng) {
    auto sp = std::make_shared<TruthTable>(random_permutation(width, rng));
    return {width, width, HiddenKind::random_permutation,
            [sp](std::uint32_t x) { return sp->eval_raw(x); }};
}

PointOracle make_cbc2_oracle(CbcSpec spec) {
    if (spec.block_count != 2)
        throw std::invalid_argument("make_cbc2_oracle expects a two-block spec");
    const unsigned n = spec.block_width();
    if (2 * n > BitString::kMaxWidth)
        throw std::invalid_argument("make_cbc2_oracle block too wide");
    auto sp = std::make_shared<CbcSpec>(std::move(spec));
    const std::uint32_t half_mask = (1u << n) - 1u;
    return {2 * n, n, HiddenKind::cbc_mac, [sp, n, half_mask](std::uint32_t x) {
                const std::uint32_t m1 = (x >> n) & half_mask;
                const std::uint32_t m2 = x & half_mask;
                return sp->pi.eval_raw(sp->pi.eval_raw(m1) ^ m2);
            }};
}

PointOracle make_random_function_oracle(unsigned in_width, unsigned out_width, SplitRng& rng) {
    auto sp = std::make_shared<TruthTable>(random_function(in_width, out_width, rng));
    return {in_width, out_width, HiddenKind::random_function,
            [sp](std::uint32_t x) { return sp->eval_raw(x); }};
}

CbcOracle::CbcOracle(CbcSpec spec) : spec_(std::move(spec)) {}

BitString CbcOracle::query(std::span<const BitString> message) {
    BitString tag = cbc_mac(spec_, message);  // validates shape
    ledger_.record_classical(Message(message.begin(), message.end()));
    return tag;
}

namespace {

// materialize f(b||x) = body(b, x) over all 2^{n+1} inputs
TruthTable materialize_flagged(unsigned n, unsigned out_width,
                               const std::function<std::uint32_t(bool, std::uint32_t)>& body) {
    TruthTable f(n + 1, out_width);
    const std::int64_t total = std::int64_t{1} << (n + 1);
#pragma omp parallel for schedule(static) if (total >= (std::int64_t{1} << 12))
    for (std::int64_t u = 0; u < total; ++u) {
        const bool b = (u >> n) & 1;
        const std::uint32_t x = static_cast<std::uint32_t>(u) & ((1u << n) - 1u);
        f.set(static_cast<std::uint32_t>(u), body(b, x));
    }
    return f;
}

}  // namespace

DerivedSimonOracle build_simon_f(PointOracle& v, const BitString& alpha, const BitString& beta) {
    const unsigned n = alpha.width();
    if (beta.width() != n) throw std::invalid_argument("build_simon_f constant width mismatch");
    if (alpha == beta) throw std::invalid_argument("build_simon_f needs distinct constants");
    if (v.in_width() != 2 * n || v.out_width() != 2 * n)
        throw std::invalid_argument("build_simon_f oracle shape mismatch");

    const std::uint32_t ca = alpha.bits(), cb = beta.bits();
    TruthTable f = materialize_flagged(n, n, [&](bool b, std::uint32_t a) {
        const std::uint32_t c = b ? cb : ca;
        const std::uint32_t out = v.raw((a << n) | c);
        return (out >> n) ^ c;  // top half of V(a||c), re-keyed by the branch constant
    });

    std::vector<MessageTemplate> supports;
    for (const BitString& c : {alpha, beta})
        supports.push_back({n, {std::nullopt, c}});
    v.ledger().record_quantum({supports});
    return {std::move(f), std::move(supports), &v.ledger(), 2};
}

DerivedSimonOracle build_simon_g(CbcOracle& cbc, unsigned j,
                                 std::span<const BitString> prefix_a,
                                 std::span<const BitString> prefix_b) {
    const unsigned n = cbc.block_width();
    const unsigned ell = cbc.block_count();
    const unsigned k = static_cast<unsigned>(prefix_a.size());
    if (k == 0 || prefix_b.size() != k)
        throw std::invalid_argument("build_simon_g prefixes must be nonempty and equal length");
    if (k > ell - 2 || ell < 3)
        throw UnsupportedPrefix("prefix too long: need k <= ell - 2");
    if (j < 1 || j > ell - k) throw std::invalid_argument("build_simon_g j out of range");
    bool same = true;
    for (unsigned i = 0; i < k; ++i) {
        if (prefix_a[i].width() != n || prefix_b[i].width() != n)
            throw std::invalid_argument("build_simon_g prefix block width mismatch");
        if (!(prefix_a[i] == prefix_b[i])) same = false;
    }
    if (same) throw std::invalid_argument("build_simon_g prefixes must differ");

    // message: prefix, j-1 zero blocks, the free block, ell-k-j zero blocks
    auto assemble = [&](std::span<const BitString> prefix, const BitString& x) {
        Message msg(prefix.begin(), prefix.end());
        msg.resize(ell, BitString::zero(n));
        msg[k + j - 1] = x;
        return msg;
    };

    const CbcSpec& spec = cbc.scoring_spec();
    TruthTable g = materialize_flagged(n, n, [&](bool b, std::uint32_t x) {
        const Message msg = assemble(b ? prefix_b : prefix_a, BitString(n, x));
        return cbc_mac(spec, msg).bits();
    });

    std::vector<MessageTemplate> supports;
    for (auto prefix : {prefix_a, prefix_b}) {
        MessageTemplate t{n, {}};
        t.blocks.reserve(ell);
        for (const BitString& p : prefix) t.blocks.emplace_back(p);
        for (unsigned i = k; i < ell; ++i) t.blocks.emplace_back(BitString::zero(n));
        t.blocks[k + j - 1] = std::nullopt;
        supports.push_back(std::move(t));
    }
    cbc.ledger().record_quantum({supports});
    return {std::move(g), std::move(supports), &cbc.ledger(), 1};
}

DerivedSimonOracle build_cbc2_g1(PointOracle& oracle, const BitString& alpha0,
                                 const BitString& alpha1) {
    const unsigned n = alpha0.width();
    if (alpha1.width() != n) throw std::invalid_argument("build_cbc2_g1 width mismatch");
    if (alpha0 == alpha1) throw std::invalid_argument("build_cbc2_g1 needs distinct constants");
    if (oracle.in_width() != 2 * n || oracle.out_width() != n)
        throw std::invalid_argument("build_cbc2_g1 oracle shape mismatch");

    const std::uint32_t c0 = alpha0.bits(), c1 = alpha1.bits();
    TruthTable g = materialize_flagged(n, n, [&](bool b, std::uint32_t x) {
        return oracle.raw(((b ? c1 : c0) << n) | x);
    });

    std::vector<MessageTemplate> supports;
    for (const BitString& c : {alpha0, alpha1})
        supports.push_back({n, {c, std::nullopt}});
    oracle.ledger().record_quantum({supports});
    return {std::move(g), std::move(supports), &oracle.ledger(), 1};
}

}  // namespace qsim
