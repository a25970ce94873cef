#pragma once

#include <string>
#include <vector>

namespace qeclab::verify {

struct CheckResult {
    std::string name;
    long passed = 0;
    long failed = 0;
    std::string note;

    bool ok() const { return failed == 0; }
};

// Classical code layer.
CheckResult check_hamming();
CheckResult check_matrix_forms();

// Code states, encoder, syndromes.
CheckResult check_logical_states();
CheckResult check_rotated_basis();
CheckResult check_encoder_circuit();
CheckResult check_syndrome_lookup();

// Syndrome extraction and recovery (both methods, exhaustive single Paulis,
// the double-error logical faults, and the measurement protocols).
CheckResult check_shor_state();
CheckResult check_extraction_agreement();
CheckResult check_recovery_oracle();
CheckResult check_double_errors();
CheckResult check_measurement_protocols();
CheckResult check_ft_zero_prep();

// Logical gates.
CheckResult check_transversal_gates();
CheckResult check_transversality_structure();
CheckResult check_toffoli_branches();
CheckResult check_toffoli_skeleton_b7();
CheckResult check_rotation_gadgets();
CheckResult check_leak_gadgets();

// Simulator cross-checks.
CheckResult check_conformance();

// Analytic layer.
CheckResult check_analytic_layer();

// Exhaustive single-fault insertion sweeps (the slow part; a couple of
// minutes single-threaded, trial-parallel otherwise).
CheckResult check_shor_ancilla_fault_oracle(int jobs = 0);
CheckResult check_fault_sweep_recovery(int jobs = 0);
CheckResult check_fault_sweep_prepare_zero(int jobs = 0);

/// Every deterministic oracle above, in a stable order.
std::vector<CheckResult> run_all(bool include_sweeps = true, int jobs = 0);

}  // namespace qeclab::verify
