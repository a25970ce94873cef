#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qeclab/rng.hpp"

namespace qeclab::sv {

using cplx = std::complex<double>;

/// Dense simulation is used only for exact verification; the cap keeps every
/// check comfortably in memory and under a second or two. The largest protocol
/// verified densely is two code blocks plus a 7-qubit ancilla (21 qubits).
inline constexpr int kMaxQubits = 24;

enum class GateKind {
    X,
    Y,
    Z,
    Hadamard,      // R in circuit listings
    Phase,         // P = diag(1, i)
    PhaseDagger,   // P^-1
    PhaseTheta,    // P(theta) = diag(1, e^{i theta})
    CNOT,
    CZ,
    Toffoli,
};

/// Qubit indices are 0-based. q0 is the lone index for 1-qubit gates, the
/// control for CNOT/CZ, and the first control for Toffoli.
struct Gate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;
    int q2 = -1;
    double theta = 0.0;

    static Gate x(int q) { return {GateKind::X, q}; }
    static Gate y(int q) { return {GateKind::Y, q}; }
    static Gate z(int q) { return {GateKind::Z, q}; }
    static Gate h(int q) { return {GateKind::Hadamard, q}; }
    static Gate p(int q) { return {GateKind::Phase, q}; }
    static Gate p_dag(int q) { return {GateKind::PhaseDagger, q}; }
    static Gate p_theta(int q, double theta) { return {GateKind::PhaseTheta, q, -1, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b}; }
    static Gate toffoli(int c0, int c1, int target) { return {GateKind::Toffoli, c0, c1, target}; }

    int arity() const;
};

/// Pure n-qubit state. Qubit q maps to bit (n-1-q) of the amplitude index, so
/// basis index 0b0001111 on 7 qubits is the ket |0001111> read left to right.
///
/// Each qubit carries a leak flag. A leaked qubit participates in no gate (any
/// gate touching it acts as the identity) and may not be measured; the leak
/// check primitive is the only read allowed on it.
class PureState {
  public:
    explicit PureState(int n);

    int num_qubits() const { return n_; }
    uint64_t dim() const { return uint64_t{1} << n_; }
    cplx amp(uint64_t basis_index) const { return amps_[basis_index]; }
    std::span<const cplx> amplitudes() const { return amps_; }

    void apply(const Gate& g);

    /// Born-rule measurement; collapses and renormalizes.
    int measure(int qubit, Rng& rng);

    /// Forces the given outcome and returns its Born probability. When that
    /// probability is (numerically) zero the state is left untouched.
    double measure_forced(int qubit, int outcome);

    /// Probability that measuring `qubit` yields 1.
    double prob_one(int qubit) const;

    /// Projective reset to |0>: measure, then flip if needed.
    void reset(int qubit, Rng& rng);

    bool is_leaked(int qubit) const { return leaked_[static_cast<size_t>(qubit)] != 0; }
    void set_leaked(int qubit, bool leaked) { leaked_[static_cast<size_t>(qubit)] = leaked; }

    double norm_sq() const;

    /// Installs a small state on `qubits`, which must currently be |0...0> and
    /// unentangled with the rest (true whenever they were just reset).
    void inject_product(std::span<const int> qubits, std::span<const cplx> small_amps);

  private:
    void check_qubit(int q) const;
    uint64_t bit_mask(int q) const { return uint64_t{1} << (n_ - 1 - q); }
    bool gate_is_blocked(const Gate& g) const;

    int n_;
    std::vector<cplx> amps_;
    std::vector<char> leaked_;
};

/// |<a|b>|^2 — global-phase-insensitive, symmetric, 1 for identical states.
double fidelity(const PureState& a, const PureState& b);

/// <psi| prod_q X_q^{x} Z_q^{z} |psi> for masks in qubit order (bit n-1-q), as
/// used by code-space checks and the tableau conformance oracle.
cplx pauli_expectation(const PureState& state, uint64_t x_mask, uint64_t z_mask);

struct Step {
    enum class Kind { Gate, Measure, LeakCheck };
    Kind kind;
    Gate gate{GateKind::X, -1};
    int qubit = -1;

    static Step gate_step(Gate g) { return {Kind::Gate, g}; }
    static Step measure_step(int q) { return {Kind::Measure, {GateKind::X, -1}, q}; }
    static Step leak_check_step(int q) { return {Kind::LeakCheck, {GateKind::X, -1}, q}; }
};

struct Circuit {
    int n = 0;
    std::vector<Step> steps;

    explicit Circuit(int n_qubits) : n(n_qubits) {}
    Circuit& gate(Gate g);
    Circuit& measure(int qubit);
    Circuit& leak_check(int qubit);
};

/// Sequential execution; returns measurement and leak-check outcomes in order.
std::vector<int> run(const Circuit& circuit, PureState& state, Rng& rng);

}  // namespace qeclab::sv
