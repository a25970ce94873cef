#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qeclab/engine.hpp"
#include "qeclab/steane.hpp"

namespace qeclab::gadgets {

/// What one logical-gate invocation did at the physical level.
struct LogicalGateReport {
    std::string gate;
    std::vector<int> blocks_touched;  // first physical qubit of each block
    long physical_gates = 0;
    std::vector<int> measurements;
    std::vector<std::string> fixups_applied;
};

/// Runs `body` with transcript recording and summarizes it. Recording must be
/// off on entry; it is restored off afterwards.
template <class B, class Fn>
LogicalGateReport reported(Engine<B>& eng, std::string gate, std::vector<int> blocks, Fn&& body) {
    LogicalGateReport report;
    report.gate = std::move(gate);
    report.blocks_touched = std::move(blocks);
    eng.set_recording(true);
    body(eng);
    for (const Op& op : eng.transcript()) {
        switch (op.kind) {
            case OpKind::PrepZero:
            case OpKind::Rest:
            case OpKind::LeakCheck:
                break;
            case OpKind::Measure:
                report.measurements.push_back(op.outcome);
                break;
            default:
                ++report.physical_gates;
                break;
        }
    }
    eng.set_recording(false);
    return report;
}

// ---------------------------------------------------------------------------
// Transversal logical gates. Each touches every physical qubit at most once.
// ---------------------------------------------------------------------------

/// Bitwise NOT: every odd Hamming codeword is the complement of an even one.
template <class B>
void logical_not(Engine<B>& eng, const steane::CodeBlock& block) {
    for (int p = 1; p <= 7; ++p) eng.x(block.at(p));
}

/// NOT with just three X gates, on the positions of a weight-3 odd codeword.
template <class B>
void logical_not_weight3(Engine<B>& eng, const steane::CodeBlock& block) {
    for (int p : steane::kLogicalParityTriple) eng.x(block.at(p));
}

template <class B>
void logical_z(Engine<B>& eng, const steane::CodeBlock& block) {
    for (int p = 1; p <= 7; ++p) eng.z(block.at(p));
}

/// Bitwise Hadamard maps |0>_code, |1>_code to (|0> +/- |1>)_code / sqrt(2).
template <class B>
void logical_hadamard(Engine<B>& eng, const steane::CodeBlock& block) {
    for (int p = 1; p <= 7; ++p) eng.h(block.at(p));
}

/// Logical P = diag(1, i). Odd codewords have weight 3 (mod 4) and even ones
/// weight 0 (mod 4), so the bitwise gate must be P^-1.
template <class B>
void logical_phase(Engine<B>& eng, const steane::CodeBlock& block) {
    for (int p = 1; p <= 7; ++p) eng.sdg(block.at(p));
}

template <class B>
void logical_phase_dagger(Engine<B>& eng, const steane::CodeBlock& block) {
    for (int p = 1; p <= 7; ++p) eng.s(block.at(p));
}

/// Transversal XOR: position-wise CNOTs, source into target. Exactly 7
/// physical XOR gates.
template <class B>
void logical_xor(Engine<B>& eng, const steane::CodeBlock& source,
                 const steane::CodeBlock& target) {
    if (source.overlaps(target)) throw std::invalid_argument("logical_xor: blocks overlap");
    for (int p = 1; p <= 7; ++p) eng.cnot(source.at(p), target.at(p));
}

/// Bitwise CZ is logical CZ: codeword AND-parities multiply.
template <class B>
void logical_cz(Engine<B>& eng, const steane::CodeBlock& a, const steane::CodeBlock& b) {
    if (a.overlaps(b)) throw std::invalid_argument("logical_cz: blocks overlap");
    for (int p = 1; p <= 7; ++p) eng.cz(a.at(p), b.at(p));
}

// ---------------------------------------------------------------------------
// The measurement-assisted Toffoli
// ---------------------------------------------------------------------------

/// Conditional fixups of the Toffoli gadget, derived from the algebra of the
/// measurement transformation and frozen (the derivation lives in the branch
/// oracle). Applied in this order:
///   w  = 1 (third data block, rotated readout):  CZ(anc1, anc2), Z(anc3)
///   m2 = 1 (second data block):                  X(anc2), XOR(anc1 -> anc3)
///   m1 = 1 (first data block):                   X(anc1), XOR(anc2 -> anc3)
struct ToffoliOutcome {
    int w = 0;
    int m2 = 0;
    int m1 = 0;
    int and_measure_rounds = 0;
};

/// Names the conditional fixups a ToffoliOutcome triggered, for gate reports.
std::vector<std::string> toffoli_fixups(const ToffoliOutcome& out);

/// Prepares |A> = 1/2 (|000> + |010> + |100> + |111>) on three single-qubit
/// "blocks" (the block-size-1 instance of the ancilla preparation): three
/// Hadamards, then a cat-mediated measurement of ab xor z repeated until two
/// consecutive outcomes agree, then a NOT on the third block when the settled
/// outcome is odd.
int prepare_toffoli_ancilla(DenseEngine& eng, const std::array<int, 3>& anc, int cat,
                            int max_rounds = 8);

/// Full block-size-1 Toffoli on |x,y,z> in `data`; the result appears in `anc`
/// (the original data qubits are measured out).
ToffoliOutcome logical_toffoli(DenseEngine& eng, const std::array<int, 3>& anc,
                               const std::array<int, 3>& data, int cat, int max_rounds = 8);

/// The Clifford part of the gadget at block size 7, for noise accounting on
/// the stabilizer backend: ancilla blocks arrive in a computational logical
/// state and the post-measurement skeleton (transversal XORs, rotated logical
/// readout, conditional fixups) runs exactly as at block size 1.
ToffoliOutcome toffoli_skeleton_b7(TableauEngine& eng, const std::array<steane::CodeBlock, 3>& anc,
                                   const std::array<steane::CodeBlock, 3>& data);

/// Builds an n-qubit cat state (|0...0> + |1...1>)/sqrt(2) and verifies it by
/// measuring adjacent-pair parities into a fresh ancilla; any 1 discards the
/// state. Used by the Toffoli gadget at block size 7.
template <class B>
void prepare_verified_cat(Engine<B>& eng, std::span<const int> cat, int verifier,
                          int max_attempts = 32) {
    typename Engine<B>::QuietScope quiet(eng);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (int q : cat) eng.prep_zero(q);
        eng.h(cat[0]);
        for (size_t i = 0; i + 1 < cat.size(); ++i) eng.cnot(cat[i], cat[i + 1]);
        bool ok = true;
        for (size_t i = 0; i + 1 < cat.size(); ++i) {
            eng.prep_zero(verifier);
            eng.cnot(cat[i], verifier);
            eng.cnot(cat[i + 1], verifier);
            if (eng.measure(verifier) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return;
    }
    throw std::runtime_error("prepare_verified_cat: verification retry budget exhausted");
}

// ---------------------------------------------------------------------------
// Rotation gadgets
// ---------------------------------------------------------------------------

/// e^{i theta0} = (1+3i)/(3+i) = (3+4i)/5, i.e. cos(theta0) = 3/5.
inline const double kTheta0 = std::atan2(4.0, 3.0);

/// The two-ancilla Toffoli rotation circuit. Ancilla outcome (0,0) --
/// probability 5/8 -- applies P(theta0) to the data qubit; any other outcome
/// leaves Z-damage that is repaired before the next attempt.
/// Returns the number of attempts used.
int rotate_theta0(DenseEngine& eng, int data, const std::array<int, 2>& anc,
                  int max_attempts = 64);

struct AngleLibraryEntry {
    double theta;  // the withdrawn qubit holds (|0> + e^{i theta}|1>)/sqrt(2)
    int qubit;
};

/// A library of angle qubits at theta, 2 theta, 4 theta, ... Entry k is
/// prepared on qubits[k] when withdrawn; entries may reuse qubits that earlier
/// attempts already measured out.
struct AngleLibrary {
    double theta;
    std::vector<int> qubits;

    size_t size() const { return qubits.size(); }
    AngleLibraryEntry entry(size_t k) const {
        return {std::ldexp(theta, static_cast<int>(k)), qubits.at(k)};
    }
};

/// Library rotation with the doubling schedule: attempt k XORs the data into
/// the 2^k*theta entry and measures it; outcome 0 completes a net P(theta),
/// outcome 1 leaves P(-(2^{k+1}-1) theta) of accumulated damage which the next
/// entry exactly compensates. Returns the number of attempts used; throws when
/// the library is exhausted.
int rotate_from_library(DenseEngine& eng, int data, const AngleLibrary& library);

// ---------------------------------------------------------------------------
// Leak detection and erasure recovery
// ---------------------------------------------------------------------------

/// The leak-detection circuit: X, XOR into the ancilla, X, XOR again, measure.
/// A healthy data qubit flips the ancilla twice with one intervening NOT, so
/// the readout is 1; a leaked qubit freezes all four gates and reads 0.
/// Returns 1 for clean, 0 for leaked; a clean superposition is undisturbed.
template <class B>
int leak_detect(Engine<B>& eng, int data, int ancilla) {
    eng.prep_zero(ancilla);
    eng.x(data);
    eng.cnot(data, ancilla);
    eng.x(data);
    eng.cnot(data, ancilla);
    return eng.measure(ancilla);
}

/// Replaces a leaked qubit with a fresh |0> and runs recovery restricted to
/// the known position: the bit-flip repair is fixed up immediately from the
/// replacement readout, and the phase check decides the Z repair. position 0
/// is a no-op.
template <class B>
void recover_erasure(Engine<B>& eng, const steane::CodeBlock& block, int position,
                     steane::Workspace ws) {
    if (position == 0) return;
    const int q = block.at(position);
    eng.sim().set_leaked(q, false);
    if (eng.measure(q) == 1) eng.x(q);  // discard the leaked qubit, swap in |0>
    const steane::Syndrome s = extract_syndrome_shor(eng, block, ws);
    if (s.phase_flip.value() == position) eng.z(q);
    if (s.bit_flip.value() == position) eng.x(q);
}

}  // namespace qeclab::gadgets
