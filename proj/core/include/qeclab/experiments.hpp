#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qeclab/rng.hpp"
#include "qeclab/steane.hpp"

namespace qeclab::experiments {

enum class ExperimentKind { McMemory, McXor };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::McMemory;
    std::vector<double> eps_points;
    int rounds = 1;   // mc-memory: noise + recovery rounds per trial
    int n_gates = 8;  // mc-xor: transversal XORs between recoveries
    long trials = 100000;
    uint64_t seed = 1;
    int jobs = 0;  // 0 = all hardware threads; the results do not depend on it
    steane::Method method = steane::Method::Shor;
    /// mc-memory gate rate for every gate kind; negative ties it to eps_store.
    double eps_gate = -1.0;
    /// mc-memory: also run the single bare qubit at the same rates.
    bool include_baseline = true;
};

struct PointResult {
    std::string experiment;
    double eps = 0;
    int n_or_rounds = 0;
    long trials = 0;
    long failures = 0;
    double rate = 0;
    double ci_low = 0;
    double ci_high = 0;

    /// The XOR-network experiment reports failures per gate: rate / N.
    double per_gate_rate() const { return n_or_rounds > 0 ? rate / n_or_rounds : rate; }
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<PointResult> points;
};

/// Per trial: ideal logical-zero preparation, then `rounds` repetitions of
/// {storage noise on the seven data qubits, fault-tolerant recovery with noisy
/// gates, measurements, and preparations}, then an ideal destructive decode.
/// Failure = the decode reads logical one.
ExperimentResult run_memory_experiment(const ExperimentConfig& config);

/// Per trial: two ideally prepared blocks, N transversal XORs with gate noise
/// only (storage off; ancilla construction/verification error-free, matching
/// the illustrative accounting where 12 XORs enter each syndrome), noisy
/// fault-tolerant recovery of both blocks, ideal decode of both. Failure =
/// either block decodes wrong.
ExperimentResult run_xor_experiment(const ExperimentConfig& config);

// Single trials, exposed for tests and benchmarks.
bool memory_trial(Rng& rng, double eps_store, double eps_gate, int rounds, steane::Method method);
bool memory_trial_unencoded(Rng& rng, double eps_store, int rounds);
bool xor_trial(Rng& rng, double eps_xor, int n_gates, steane::Method method);

/// Deterministic trial-parallel counting: per-trial streams are derived from
/// (seed, point, trial), so the sum is independent of the thread count.
long count_failures(long trials, int jobs, const std::function<bool(long)>& trial_fails);

struct WilsonInterval {
    double low = 0;
    double high = 0;
};

/// 95% Wilson score interval. Zero-failure points report the one-sided
/// rule-of-three upper bound 3/n instead of being dropped.
WilsonInterval wilson(long failures, long trials);

struct ScalingFit {
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
    size_t points_used = 0;
};

/// Ordinary least squares on (ln eps, ln rate). Zero-rate points are excluded
/// (with a note in the residual count); fewer than 3 usable points throws.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> eps_rate);

/// Flat CSV: experiment,eps,n_or_rounds,trials,failures,rate,ci_low,ci_high,
/// seed,version. UTF-8, LF line endings, byte-stable for a fixed config+seed.
std::string to_csv(const ExperimentResult& result);

}  // namespace qeclab::experiments
