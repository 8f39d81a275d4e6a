#include "qsim/simon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsim/gf2.hpp"
#include "qsim/walsh.hpp"

namespace qsim::simon {

namespace {

constexpr unsigned kSpectralMaxM = 14;

// preimage classes of f, grouped via one sort of the domain by value
struct Classes {
    std::vector<std::uint32_t> order;            // domain sorted by f value
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // [begin, end) into order
};

Classes group_classes(const TruthTable& f) {
    Classes c;
    c.order.resize(f.size());
    std::iota(c.order.begin(), c.order.end(), 0u);
    std::sort(c.order.begin(), c.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const std::uint32_t fa = f.eval_raw(a), fb = f.eval_raw(b);
        return fa != fb ? fa < fb : a < b;
    });
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= c.order.size(); ++i) {
        if (i == c.order.size() || f.eval_raw(c.order[i]) != f.eval_raw(c.order[begin])) {
            c.spans.emplace_back(begin, i);
            begin = i;
        }
    }
    return c;
}

SimonDistribution spectral_impl(const TruthTable& f, bool use_threads) {
    const unsigned m = f.in_width();
    if (m > kSpectralMaxM)
        throw std::invalid_argument("spectral_distribution: in_width above cap");
    const std::size_t size = f.size();
    const Classes cls = group_classes(f);

    std::vector<std::int64_t> acc(size, 0);
    const std::int64_t nclasses = static_cast<std::int64_t>(cls.spans.size());
#pragma omp parallel if (use_threads)
    {
        std::vector<std::int64_t> scratch(size);
        std::vector<std::int64_t> local(size, 0);
#pragma omp for schedule(dynamic)
        for (std::int64_t ci = 0; ci < nclasses; ++ci) {
            const auto [b, e] = cls.spans[static_cast<std::size_t>(ci)];
            std::fill(scratch.begin(), scratch.end(), 0);
            for (std::size_t i = b; i < e; ++i) scratch[cls.order[i]] = 1;
            walsh_hadamard_serial(scratch);
            for (std::size_t j = 0; j < size; ++j) local[j] += scratch[j] * scratch[j];
        }
#pragma omp critical
        for (std::size_t j = 0; j < size; ++j) acc[j] += local[j];
    }

    SimonDistribution d;
    d.m = m;
    d.probs.resize(size);
    for (std::size_t j = 0; j < size; ++j)
        d.probs[j] = std::ldexp(static_cast<double>(acc[j]), -2 * static_cast<int>(m));
    return d;
}

std::uint32_t drop_bit(std::uint32_t bits, unsigned p) {
    const std::uint32_t low = bits & ((1u << p) - 1u);
    const std::uint32_t high = (bits >> (p + 1)) << p;
    return low | high;
}

std::uint32_t insert_bit(std::uint32_t bits, unsigned p, bool v) {
    const std::uint32_t low = bits & ((1u << p) - 1u);
    const std::uint32_t high = (bits >> p) << (p + 1);
    return high | (static_cast<std::uint32_t>(v) << p) | low;
}

}  // namespace

SimonDistribution spectral_distribution(const TruthTable& f, bool use_threads) {
    return spectral_impl(f, use_threads);
}

SimonDistribution spectral_distribution_serial(const TruthTable& f) {
    return spectral_impl(f, false);
}

Sampler::Sampler(const TruthTable& f, Method method)
    : f_(&f), method_(method), m_(f.in_width()) {
    if (method_ == Method::spectral) {
        if (m_ > kSpectralMaxM) throw std::invalid_argument("Sampler: in_width above cap");
        scratch_.resize(f.size());
    } else {
        // exact integer weights recovered from the dyadic marginal
        const SimonDistribution d = statevector_distribution(f);
        cumulative_.resize(d.probs.size());
        std::int64_t running = 0;
        for (std::size_t j = 0; j < d.probs.size(); ++j) {
            running += std::llround(std::ldexp(d.probs[j], 2 * static_cast<int>(m_)));
            cumulative_[j] = running;
        }
    }
}

BitString Sampler::draw(SplitRng& rng) {
    const std::size_t size = std::size_t{1} << m_;
    if (method_ == Method::statevector) {
        const std::int64_t total = cumulative_.back();
        const std::int64_t t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
        return {m_, static_cast<std::uint32_t>(it - cumulative_.begin())};
    }
    // stage 1: output class, weighted by |f^-1(y)| / 2^m
    const std::uint32_t y = f_->eval_raw(static_cast<std::uint32_t>(rng.below(size)));
    std::int64_t class_size = 0;
    for (std::size_t u = 0; u < size; ++u) {
        const bool in = f_->eval_raw(static_cast<std::uint32_t>(u)) == y;
        scratch_[u] = in ? 1 : 0;
        class_size += in;
    }
    // stage 2: outcome within the class, proportional to the squared
    // character sum; total mass is 2^m * |class| by Parseval
    walsh_hadamard(scratch_);
    const std::int64_t total = class_size << m_;
    std::int64_t t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
    for (std::size_t j = 0; j < size; ++j) {
        t -= scratch_[j] * scratch_[j];
        if (t < 0) return {m_, static_cast<std::uint32_t>(j)};
    }
    throw std::logic_error("Sampler: weight walk exhausted");
}

SolveResult solve_hidden_shift(const TruthTable& f, unsigned known_pos, bool known_value,
                               unsigned sample_cap, Method method, SplitRng& rng,
                               const std::function<void()>& on_sample) {
    const unsigned m = f.in_width();
    if (known_pos >= m) throw std::invalid_argument("solve_hidden_shift known_pos out of range");
    const unsigned unknowns = m - 1;

    SolveResult res;
    if (unknowns == 0) {
        res.solved = true;
        res.s = BitString(1, known_value ? 1u : 0u);
        return res;
    }

    Sampler sampler(f, method);
    gf2::Matrix basis(0, unknowns);
    std::vector<std::uint8_t> rhs;

    for (unsigned i = 0; i < sample_cap; ++i) {
        const BitString j = sampler.draw(rng);
        if (on_sample) on_sample();
        res.samples_drawn = i + 1;

        const bool j_known = j.bit(known_pos);
        const BitString j_rest(unknowns, drop_bit(j.bits(), known_pos));
        if (!basis.add_if_independent(j_rest)) continue;  // dependent rows count toward the cap
        rhs.push_back(j_known && known_value ? 1 : 0);
        res.basis_rank = basis.rank();
        if (res.basis_rank < unknowns) continue;

        const gf2::AffineSolution sol = gf2::solve_affine(basis, rhs);
        const BitString* rest = std::get_if<BitString>(&sol);
        if (!rest)
            throw InconsistentSystem("independent sample system failed to solve");
        res.solved = true;
        res.s = BitString(m, insert_bit(rest->bits(), known_pos, known_value));
        return res;
    }
    return res;  // rank deficient at the cap
}

}  // namespace qsim::simon
