#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsim/bitstring.hpp"
#include "qsim/rng.hpp"
#include "qsim/truth_table.hpp"

namespace qsim::simon {

// Measurement law of one Simon subroutine run against f:
//   Pr[j] = 2^{-2m} * sum_y (sum_{u in f^-1(y)} (-1)^{u.j})^2
// All values are dyadic rationals and are stored exactly.
struct SimonDistribution {
    unsigned m = 0;
    std::vector<double> probs;
};

// Collision-spectrum route: per output class, an integer Walsh-Hadamard
// transform of the class indicator, squared and accumulated. m <= 14.
SimonDistribution spectral_distribution(const TruthTable& f, bool use_threads = true);
SimonDistribution spectral_distribution_serial(const TruthTable& f);

// Full statevector simulation of the subroutine circuit
// H^m -> U_f -> H^m -> measure, kept independent of the spectral route.
// Amplitudes stay integer-valued (normalization is deferred), so the
// result is exact. Requires in_width + out_width <= 20.
class StatevectorSim {
public:
    explicit StatevectorSim(const TruthTable& f, bool use_threads = true);

    void hadamard_inputs();  // H on every input-register qubit
    void apply_oracle();     // |u>|y| -> |u>|y ^ f(u)>
    void run();              // H, U_f, H

    std::vector<double> input_marginal() const;   // outcome law over j
    std::vector<double> output_marginal() const;  // mid-circuit probe over y

private:
    void hadamard_qubit(unsigned q);

    const TruthTable* f_;
    unsigned m_, r_;
    unsigned h_gates_ = 0;  // deferred 1/sqrt(2) factors
    bool use_threads_;
    std::vector<double> amp_;
};

SimonDistribution statevector_distribution(const TruthTable& f, bool use_threads = true);

enum class Method { spectral, statevector };

// Draws measurement outcomes for a fixed f. The spectral path samples the
// output class first (by evaluating f at a uniform point), then the outcome
// within the class from the squared character sums; both stages use exact
// integer thresholds. The statevector path samples the precomputed marginal.
class Sampler {
public:
    Sampler(const TruthTable& f, Method method);
    BitString draw(SplitRng& rng);

private:
    const TruthTable* f_;
    Method method_;
    unsigned m_;
    std::vector<std::int64_t> scratch_;      // spectral: per-draw class transform
    std::vector<std::int64_t> cumulative_;   // statevector: integer prefix weights
};

struct SolveResult {
    bool solved = false;
    std::optional<BitString> s;
    unsigned samples_drawn = 0;
    unsigned basis_rank = 0;
};

struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recovers the hidden shift s given that coordinate known_pos of s equals
// known_value (the branch flag in both attacks). Every sampled j satisfies
// j.s = 0, i.e. j_rest . s_rest = j_known * known_value; independent rows
// are collected until the system is square, or sample_cap runs are spent
// (rank-deficient result). on_sample is invoked once per subroutine run.
SolveResult solve_hidden_shift(const TruthTable& f, unsigned known_pos, bool known_value,
                               unsigned sample_cap, Method method, SplitRng& rng,
                               const std::function<void()>& on_sample = {});

}  // namespace qsim::simon
