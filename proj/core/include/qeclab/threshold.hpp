#pragma once

#include <vector>

namespace qeclab::threshold {

// The full multi-parameter concatenation flow equations are not reproduced
// here; their standard quoted conclusions are kept as reference constants.
// The illustrative XOR-network calculation below is reproduced exactly.
inline constexpr double kFlowGateThreshold = 1e-4;
inline constexpr double kFlowStorageThreshold = 1e-5;
inline constexpr double kAcceptableToffoliRate = 1e-3;

// Error-rate targets of the factoring resource estimate.
inline constexpr double kToffoliErrorTarget = 1e-9;
inline constexpr double kStorageErrorTarget = 1e-12;

/// The "additional ancilla qubits needed to implement gates and (parallelized)
/// error correction" enter the machine-size estimate only through this factor.
inline constexpr double kAncillaOverheadFactor = 1.5;

/// (t^b * eps)^(t+1): probability that t+1 errors accumulate while a syndrome
/// measurement of complexity t^b runs.
double block_error_probability(int t, double b, double eps);

struct OptimalT {
    double t_asymptotic;          // e^-1 * eps^(-1/b)
    double min_error_asymptotic;  // exp(-e^-1 * b * eps^(-1/b))
    int t_argmin;                 // exact integer argmin of block_error_probability
    double argmin_error;
};
OptimalT optimal_t_min_error(double b, double eps);

/// Gate accuracy needed to survive T steps: (ln T)^-b.
double required_accuracy(double total_steps, double b);

/// 12 XOR gates compute one syndrome with Shor ancillas.
double syndrome_error_rate(double eps_xor);

/// 2 * 5 * (12 eps)^2: both syndromes, with the standard quoted value of the
/// repeated-measurement combinatorial factor.
double recovery_failure_rate(double eps_xor);

/// (21 N^2 + 336 N + 1440) eps^2 / N: per-gate probability that two errors
/// accumulate when recovery follows every N transversal XORs.
double gate_failure_rate(int n_gates, double eps_xor);

struct OptimizedN {
    int n;               // 8, for every eps (the argmin is scale-invariant)
    double coefficient;  // 684
    double rate;         // coefficient * eps^2
};
OptimizedN optimize_n(double eps_xor);

/// 1/684 ~ 1.46e-3: where the encoded per-gate failure matches the bare rate.
double threshold_estimate();

/// Exact combinatorics of the agree-twice protocol under a fully stated model:
/// each round is faulty with probability q, faulty results are pairwise
/// distinct and differ from the correct value, the protocol stops at the first
/// consecutive agreement, and a run fails when it contains two or more faulty
/// rounds. Enumeration is exhaustive up to max_length; every sequence with
/// exactly two faults has length <= 6, so the q^2 coefficient is exact.
struct RepetitionFailureOracle {
    int max_length;
    double q2_coefficient;              // exact count of two-fault runs
    double quoted_coefficient;          // 5, the constant the standard flow-table analysis uses
    std::vector<std::pair<int, int>> terminated_runs;  // (faults, length) per enumerated run

    /// Total failure probability, summed over enumerated runs. Throws when the
    /// certified tail bound at this q is not negligible against the sum.
    double failure_probability(double q) const;
    /// Probability that no two consecutive clean rounds occur within
    /// max_length rounds (everything the enumeration can miss).
    double tail_bound(double q) const;
};
RepetitionFailureOracle repetition_failure_oracle(int max_length = 12);

/// eps0 * (eps/eps0)^(2^L). Level 0 is the bare rate.
double concatenated_error(double eps, double eps0, int levels);

/// Smallest L with concatenated_error(eps, eps0, L) <= target.
int required_levels(double eps, double eps0, double target);

/// [log(eps0 T) / log(eps0/eps)]^(log n / log(t+1)), an order-of-magnitude
/// block-size requirement. Returns +infinity at eps -> eps0.
double required_block_size(double total_gates, double eps, double eps0, int n = 7, int t = 1);

struct ResourceEstimate {
    double k_bits;
    double toffoli_count;    // 38 K^3
    double encoded_qubits;   // 5 K
    int levels;              // max of the gate- and storage-target requirements
    double block_size;       // 7^levels
    double physical_qubits;  // encoded * block size * ancilla overhead
    int physical_qubits_order;  // nearest power of ten
};
ResourceEstimate factoring_resources(double k_bits, double eps_gate = 1e-6,
                                     double eps_store = 1e-6);

}  // namespace qeclab::threshold
