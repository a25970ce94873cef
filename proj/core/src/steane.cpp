#include "qeclab/steane.hpp"

#include <cmath>

namespace qeclab::steane {

namespace {
constexpr double kInvSqrt8 = 0.35355339059327376220;  // 1/sqrt(8)
}

std::array<int, 3> find_logical_parity_triple() {
    const auto& words = hamming::codewords();
    for (int i = 1; i <= 7; ++i) {
        for (int j = i + 1; j <= 7; ++j) {
            for (int k = j + 1; k <= 7; ++k) {
                bool ok = true;
                for (const auto& v : words.all) {
                    const int triple_parity = v.bit(i) ^ v.bit(j) ^ v.bit(k);
                    if (triple_parity != (v.weight() & 1)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return {i, j, k};
            }
        }
    }
    throw std::logic_error("no weight-3 logical parity representative exists");
}

sv::PureState logical_state(sv::cplx a, sv::cplx b) {
    sv::PureState state(7);
    const auto& words = hamming::codewords();
    std::vector<sv::cplx> amps(128, sv::cplx{0, 0});
    for (const auto& w : words.even) amps[w.packed()] = a * kInvSqrt8;
    for (const auto& w : words.odd) amps[w.packed()] = b * kInvSqrt8;
    const std::array<int, 7> all = {0, 1, 2, 3, 4, 5, 6};
    state.inject_product(all, amps);
    return state;
}

sv::PureState logical_zero() { return logical_state(1.0, 0.0); }
sv::PureState logical_one() { return logical_state(0.0, 1.0); }

void inject_logical(sv::PureState& state, const CodeBlock& block, sv::cplx a, sv::cplx b) {
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    std::vector<sv::cplx> amps(128, sv::cplx{0, 0});
    const auto& words = hamming::codewords();
    for (const auto& w : words.even) amps[w.packed()] = a * kInvSqrt8;
    for (const auto& w : words.odd) amps[w.packed()] = b * kInvSqrt8;
    std::array<int, 7> qubits{};
    for (int p = 1; p <= 7; ++p) qubits[static_cast<size_t>(p - 1)] = block.at(p);
    state.inject_product(qubits, amps);
}

sv::Circuit encoder_circuit() {
    using sv::Gate;
    sv::Circuit c(7);
    // Wires are 1-based in the comments, 0-based in the indices.
    c.gate(Gate::cnot(0, 1));  // data onto the two other parity-triple wires
    c.gate(Gate::cnot(0, 2));
    c.gate(Gate::h(6));
    c.gate(Gate::h(5));
    c.gate(Gate::h(4));
    c.gate(Gate::cnot(6, 0));  // wire 7 switches on its row's parity bits
    c.gate(Gate::cnot(6, 1));
    c.gate(Gate::cnot(6, 3));
    c.gate(Gate::cnot(5, 0));  // wire 6
    c.gate(Gate::cnot(5, 2));
    c.gate(Gate::cnot(5, 3));
    c.gate(Gate::cnot(4, 1));  // wire 5
    c.gate(Gate::cnot(4, 2));
    c.gate(Gate::cnot(4, 3));
    return c;
}

Syndrome syndrome_lookup(const stab::PauliError& error) {
    if (error.n != 7) throw std::invalid_argument("syndrome_lookup: expected a 7-qubit error");
    const auto support = error.support();
    if (support.size() > 1)
        throw std::invalid_argument("syndrome_lookup: error must be single-position");
    Syndrome s{};
    if (support.empty()) return s;
    const int q = support[0];
    const int position = q + 1;
    if (error.x_bit(q)) s.bit_flip = hamming::ClassicalSyndrome(position);
    if (error.z_bit(q)) s.phase_flip = hamming::ClassicalSyndrome(position);
    return s;
}

}  // namespace qeclab::steane
