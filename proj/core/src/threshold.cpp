#include "qeclab/threshold.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace qeclab::threshold {

namespace {
constexpr double kInvE = 0.36787944117144232160;
}

double block_error_probability(int t, double b, double eps) {
    if (t < 1) throw std::invalid_argument("block_error_probability: t must be >= 1");
    if (b <= 0) throw std::invalid_argument("block_error_probability: b must be positive");
    if (eps < 0 || eps >= 1)
        throw std::invalid_argument("block_error_probability: eps must lie in [0, 1)");
    return std::pow(std::pow(static_cast<double>(t), b) * eps, t + 1);
}

OptimalT optimal_t_min_error(double b, double eps) {
    if (b <= 0 || eps <= 0 || eps >= 1)
        throw std::invalid_argument("optimal_t_min_error: domain violation");
    OptimalT out{};
    out.t_asymptotic = kInvE * std::pow(eps, -1.0 / b);
    out.min_error_asymptotic = std::exp(-kInvE * b * std::pow(eps, -1.0 / b));
    const int scan_max = std::max(100, static_cast<int>(3.0 * out.t_asymptotic) + 1);
    out.t_argmin = 1;
    out.argmin_error = block_error_probability(1, b, eps);
    for (int t = 2; t <= scan_max; ++t) {
        const double p = block_error_probability(t, b, eps);
        if (p < out.argmin_error) {
            out.argmin_error = p;
            out.t_argmin = t;
        }
    }
    return out;
}

double required_accuracy(double total_steps, double b) {
    if (total_steps <= 1) throw std::invalid_argument("required_accuracy: need T > 1");
    return std::pow(std::log(total_steps), -b);
}

double syndrome_error_rate(double eps_xor) {
    if (eps_xor < 0 || eps_xor > 1) throw std::invalid_argument("syndrome_error_rate: bad eps");
    return 12.0 * eps_xor;
}

double recovery_failure_rate(double eps_xor) {
    if (eps_xor < 0 || eps_xor > 1) throw std::invalid_argument("recovery_failure_rate: bad eps");
    return 1440.0 * eps_xor * eps_xor;
}

double gate_failure_rate(int n_gates, double eps_xor) {
    if (n_gates < 1) throw std::invalid_argument("gate_failure_rate: N must be >= 1");
    const double n = n_gates;
    return (21.0 * n * n + 336.0 * n + 1440.0) * eps_xor * eps_xor / n;
}

OptimizedN optimize_n(double eps_xor) {
    int best = 1;
    double best_coeff = 21.0 + 336.0 + 1440.0;
    for (int n = 2; n <= 10000; ++n) {
        const double coeff = (21.0 * n * n + 336.0 * n + 1440.0) / n;
        if (coeff < best_coeff) {
            best_coeff = coeff;
            best = n;
        }
    }
    return {best, best_coeff, best_coeff * eps_xor * eps_xor};
}

double threshold_estimate() { return 1.0 / optimize_n(0.0).coefficient; }

double RepetitionFailureOracle::tail_bound(double q) const {
    // P(no clean-clean pair in the first max_length rounds), exact by dynamic
    // programming over (last round clean?).
    double p_end_clean = 1.0 - q;  // length-1 prefixes
    double p_end_fault = q;
    for (int len = 2; len <= max_length; ++len) {
        const double next_clean = p_end_fault * (1.0 - q);  // clean after fault only
        const double next_fault = (p_end_clean + p_end_fault) * q;
        p_end_clean = next_clean;
        p_end_fault = next_fault;
    }
    return p_end_clean + p_end_fault;
}

double RepetitionFailureOracle::failure_probability(double q) const {
    double sum = 0.0;
    for (const auto& [faults, length] : terminated_runs) {
        if (faults < 2) continue;
        sum += std::pow(q, faults) * std::pow(1.0 - q, length - faults);
    }
    const double tail = tail_bound(q);
    if (sum > 0 && tail > 1e-6 * sum)
        throw std::runtime_error("RepetitionFailureOracle: cutoff too small for certified tail");
    return sum;
}

RepetitionFailureOracle repetition_failure_oracle(int max_length) {
    if (max_length < 6)
        throw std::invalid_argument("repetition_failure_oracle: cutoff below two-fault run length");
    RepetitionFailureOracle oracle{};
    oracle.max_length = max_length;
    oracle.quoted_coefficient = 5.0;
    int two_fault_runs = 0;
    // Enumerate fault patterns of every length; keep the runs that terminate
    // exactly at their final round (first adjacent clean-clean pair at the end).
    for (int len = 2; len <= max_length; ++len) {
        for (uint32_t bits = 0; bits < (uint32_t{1} << len); ++bits) {
            const auto faulty = [&](int i) { return (bits >> i) & 1u; };
            if (faulty(len - 1) || faulty(len - 2)) continue;
            bool earlier_agreement = false;
            for (int i = 0; i + 1 < len - 1; ++i) {
                if (!faulty(i) && !faulty(i + 1)) {
                    earlier_agreement = true;
                    break;
                }
            }
            if (earlier_agreement) continue;
            const int faults = std::popcount(bits);
            oracle.terminated_runs.emplace_back(faults, len);
            if (faults == 2) ++two_fault_runs;
        }
    }
    oracle.q2_coefficient = two_fault_runs;
    return oracle;
}

double concatenated_error(double eps, double eps0, int levels) {
    if (levels < 0) throw std::invalid_argument("concatenated_error: levels must be >= 0");
    if (eps <= 0 || eps0 <= 0 || eps > eps0)
        throw std::invalid_argument("concatenated_error: above threshold -- concatenation diverges");
    return eps0 * std::pow(eps / eps0, std::pow(2.0, levels));
}

int required_levels(double eps, double eps0, double target) {
    for (int levels = 0; levels <= 64; ++levels) {
        if (concatenated_error(eps, eps0, levels) <= target) return levels;
    }
    throw std::runtime_error("required_levels: target unreachable within 64 levels");
}

double required_block_size(double total_gates, double eps, double eps0, int n, int t) {
    if (eps0 * total_gates <= 1)
        throw std::invalid_argument("required_block_size: need eps0 * T > 1");
    if (eps <= 0 || eps > eps0) throw std::invalid_argument("required_block_size: need eps <= eps0");
    const double denom = std::log(eps0 / eps);
    if (denom <= 0) return std::numeric_limits<double>::infinity();
    const double base = std::log(eps0 * total_gates) / denom;
    return std::pow(base, std::log(static_cast<double>(n)) / std::log(static_cast<double>(t + 1)));
}

ResourceEstimate factoring_resources(double k_bits, double eps_gate, double eps_store) {
    if (k_bits < 16) throw std::invalid_argument("factoring_resources: K must be >= 16");
    ResourceEstimate r{};
    r.k_bits = k_bits;
    r.toffoli_count = 38.0 * k_bits * k_bits * k_bits;
    r.encoded_qubits = 5.0 * k_bits;
    const int gate_levels = required_levels(eps_gate, kFlowGateThreshold, kToffoliErrorTarget);
    const int store_levels = required_levels(eps_store, kFlowStorageThreshold, kStorageErrorTarget);
    r.levels = std::max(gate_levels, store_levels);
    r.block_size = std::pow(7.0, r.levels);
    r.physical_qubits = r.encoded_qubits * r.block_size * kAncillaOverheadFactor;
    r.physical_qubits_order = static_cast<int>(std::lround(std::log10(r.physical_qubits)));
    return r;
}

}  // namespace qeclab::threshold
