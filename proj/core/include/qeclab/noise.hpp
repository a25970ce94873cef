#pragma once

#include <span>

#include "qeclab/pauli.hpp"
#include "qeclab/rng.hpp"

namespace qeclab {

/// Stochastic Pauli error model: a storage rate per qubit per timestep and a
/// rate per gate kind. The three error types (bit flip, phase flip, both) are
/// equally likely, and a faulty multi-qubit gate damages every qubit it
/// touches, each drawing independently and uniformly from {X, Y, Z}.
///
/// A faulty measurement flips the reported classical outcome without further
/// disturbance; a faulty |0> preparation yields |1>.
struct NoiseModel {
    double eps_store = 0.0;
    double eps_1q = 0.0;
    double eps_xor = 0.0;
    double eps_toffoli = 0.0;
    double eps_meas = 0.0;
    double eps_prep = 0.0;

    /// When set, ancilla construction and verification (the work inside quiet
    /// scopes) runs error-free. This reproduces the accounting of the
    /// illustrative XOR-network model, where only the data-coupled XOR gates
    /// of a syndrome measurement carry noise.
    bool ideal_ancilla_work = false;

    bool any() const {
        return eps_store > 0 || eps_1q > 0 || eps_xor > 0 || eps_toffoli > 0 || eps_meas > 0 ||
               eps_prep > 0;
    }

    static NoiseModel uniform(double eps_gate, double eps_store) {
        NoiseModel m;
        m.eps_store = eps_store;
        m.eps_1q = m.eps_xor = m.eps_toffoli = m.eps_meas = m.eps_prep = eps_gate;
        return m;
    }

    static NoiseModel xor_only(double eps_xor) {
        NoiseModel m;
        m.eps_xor = eps_xor;
        m.ideal_ancilla_work = true;
        return m;
    }
};

enum class NoiseEventKind { OneQubitGate, XorGate, ToffoliGate, Rest };

/// Draws the Pauli error for one event. Gate events fire with the gate kind's
/// probability and then damage every touched qubit; rest events damage each
/// resting qubit independently with probability eps_store.
inline stab::PauliError sample_noise(const NoiseModel& model, NoiseEventKind kind,
                                     std::span<const int> qubits, int n, Rng& rng) {
    stab::PauliError e(n);
    auto draw = [&rng, &e](int q) {
        switch (rng.below(3)) {
            case 0: e.set(q, true, false); break;   // X
            case 1: e.set(q, false, true); break;   // Z
            default: e.set(q, true, true); break;   // Y
        }
    };
    if (kind == NoiseEventKind::Rest) {
        for (int q : qubits)
            if (rng.bernoulli(model.eps_store)) draw(q);
        return e;
    }
    const double eps = kind == NoiseEventKind::OneQubitGate ? model.eps_1q
                       : kind == NoiseEventKind::XorGate    ? model.eps_xor
                                                            : model.eps_toffoli;
    if (eps > 0 && rng.bernoulli(eps)) {
        for (int q : qubits) draw(q);
    }
    return e;
}

}  // namespace qeclab
