#include <cmath>
#include <stdexcept>

#include "qsim/simon.hpp"

namespace qsim::simon {

namespace {
constexpr unsigned kMaxQubits = 20;
constexpr std::int64_t kThreadThreshold = std::int64_t{1} << 14;
}  // namespace

// Basis index layout: |u>|y> lives at (u << r) | y.
StatevectorSim::StatevectorSim(const TruthTable& f, bool use_threads)
    : f_(&f), m_(f.in_width()), r_(f.out_width()), use_threads_(use_threads) {
    if (m_ + r_ > kMaxQubits)
        throw std::invalid_argument("StatevectorSim: register too wide");
    amp_.assign(std::size_t{1} << (m_ + r_), 0.0);
    amp_[0] = 1.0;
}

// Unnormalized H on qubit q: (a, b) -> (a+b, a-b). The 1/sqrt(2) factors
// are deferred and folded into the marginals, so amplitudes stay integers
// and the simulation is exact in doubles.
void StatevectorSim::hadamard_qubit(unsigned q) {
    const std::int64_t pairs = static_cast<std::int64_t>(amp_.size() / 2);
    const std::size_t half = std::size_t{1} << q;
    const std::size_t lo_mask = half - 1;
    const std::size_t hi_mask = ~lo_mask;
    double* amp = amp_.data();
#pragma omp parallel for schedule(static) if (use_threads_ && pairs >= kThreadThreshold)
    for (std::int64_t p = 0; p < pairs; ++p) {
        const std::size_t up = static_cast<std::size_t>(p);
        const std::size_t i = ((up & hi_mask) << 1) | (up & lo_mask);
        const double a = amp[i];
        const double b = amp[i + half];
        amp[i] = a + b;
        amp[i + half] = a - b;
    }
    ++h_gates_;
}

void StatevectorSim::hadamard_inputs() {
    for (unsigned q = r_; q < r_ + m_; ++q) hadamard_qubit(q);
}

void StatevectorSim::apply_oracle() {
    const std::int64_t inputs = std::int64_t{1} << m_;
    const std::size_t ysize = std::size_t{1} << r_;
    double* amp = amp_.data();
#pragma omp parallel for schedule(static) if (use_threads_ && inputs >= kThreadThreshold)
    for (std::int64_t u = 0; u < inputs; ++u) {
        const std::uint32_t c = f_->eval_raw(static_cast<std::uint32_t>(u));
        if (c == 0) continue;
        const std::size_t base = static_cast<std::size_t>(u) << r_;
        for (std::size_t y = 0; y < ysize; ++y) {
            const std::size_t y2 = y ^ c;
            if (y < y2) std::swap(amp[base | y], amp[base | y2]);
        }
    }
}

void StatevectorSim::run() {
    hadamard_inputs();
    apply_oracle();
    hadamard_inputs();
}

std::vector<double> StatevectorSim::input_marginal() const {
    const std::size_t ysize = std::size_t{1} << r_;
    std::vector<double> out(std::size_t{1} << m_, 0.0);
    for (std::size_t u = 0; u < out.size(); ++u) {
        double sum = 0.0;
        const std::size_t base = u << r_;
        for (std::size_t y = 0; y < ysize; ++y) sum += amp_[base | y] * amp_[base | y];
        out[u] = std::ldexp(sum, -static_cast<int>(h_gates_));
    }
    return out;
}

std::vector<double> StatevectorSim::output_marginal() const {
    const std::size_t ysize = std::size_t{1} << r_;
    std::vector<double> out(ysize, 0.0);
    for (std::size_t u = 0; u < (std::size_t{1} << m_); ++u) {
        const std::size_t base = u << r_;
        for (std::size_t y = 0; y < ysize; ++y) out[y] += amp_[base | y] * amp_[base | y];
    }
    for (double& p : out) p = std::ldexp(p, -static_cast<int>(h_gates_));
    return out;
}

SimonDistribution statevector_distribution(const TruthTable& f, bool use_threads) {
    StatevectorSim sim(f, use_threads);
    sim.run();
    return {f.in_width(), sim.input_marginal()};
}

}  // namespace qsim::simon
