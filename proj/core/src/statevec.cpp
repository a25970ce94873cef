#include "qeclab/statevec.hpp"

#include <cmath>
#include <stdexcept>

namespace qeclab::sv {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
            return 2;
        case GateKind::Toffoli:
            return 3;
        default:
            return 1;
    }
}

PureState::PureState(int n) : n_(n) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("PureState: qubit cap exceeded");
    amps_.assign(uint64_t{1} << n, cplx{0.0, 0.0});
    amps_[0] = 1.0;
    leaked_.assign(static_cast<size_t>(n), 0);
}

void PureState::check_qubit(int q) const {
    if (q < 0 || q >= n_) throw std::out_of_range("PureState: qubit index out of range");
}

bool PureState::gate_is_blocked(const Gate& g) const {
    const int a = g.arity();
    check_qubit(g.q0);
    if (a >= 2) check_qubit(g.q1);
    if (a >= 3) check_qubit(g.q2);
    if (a >= 2 && (g.q0 == g.q1 || (a >= 3 && (g.q0 == g.q2 || g.q1 == g.q2))))
        throw std::invalid_argument("PureState: gate qubits must be distinct");
    if (is_leaked(g.q0)) return true;
    if (a >= 2 && is_leaked(g.q1)) return true;
    if (a >= 3 && is_leaked(g.q2)) return true;
    return false;
}

void PureState::apply(const Gate& g) {
    if (gate_is_blocked(g)) return;  // leaked qubits freeze every gate they touch

    const uint64_t dim = this->dim();
    switch (g.kind) {
        case GateKind::X: {
            const uint64_t m = bit_mask(g.q0);
            for (uint64_t i = 0; i < dim; ++i)
                if (i & m) std::swap(amps_[i], amps_[i ^ m]);
            break;
        }
        case GateKind::Y: {
            const uint64_t m = bit_mask(g.q0);
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & m) {
                    const cplx hi = amps_[i];
                    const cplx lo = amps_[i ^ m];
                    amps_[i ^ m] = cplx{0, -1} * hi;
                    amps_[i] = cplx{0, 1} * lo;
                }
            }
            break;
        }
        case GateKind::Z: {
            const uint64_t m = bit_mask(g.q0);
            for (uint64_t i = 0; i < dim; ++i)
                if (i & m) amps_[i] = -amps_[i];
            break;
        }
        case GateKind::Hadamard: {
            const uint64_t m = bit_mask(g.q0);
            for (uint64_t i = 0; i < dim; ++i) {
                if (!(i & m)) {
                    const cplx lo = amps_[i];
                    const cplx hi = amps_[i | m];
                    amps_[i] = (lo + hi) * kInvSqrt2;
                    amps_[i | m] = (lo - hi) * kInvSqrt2;
                }
            }
            break;
        }
        case GateKind::Phase: {
            const uint64_t m = bit_mask(g.q0);
            for (uint64_t i = 0; i < dim; ++i)
                if (i & m) amps_[i] *= cplx{0, 1};
            break;
        }
        case GateKind::PhaseDagger: {
            const uint64_t m = bit_mask(g.q0);
            for (uint64_t i = 0; i < dim; ++i)
                if (i & m) amps_[i] *= cplx{0, -1};
            break;
        }
        case GateKind::PhaseTheta: {
            const uint64_t m = bit_mask(g.q0);
            const cplx phase = std::polar(1.0, g.theta);
            for (uint64_t i = 0; i < dim; ++i)
                if (i & m) amps_[i] *= phase;
            break;
        }
        case GateKind::CNOT: {
            const uint64_t c = bit_mask(g.q0), t = bit_mask(g.q1);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & c) && (i & t)) std::swap(amps_[i], amps_[i ^ t]);
            break;
        }
        case GateKind::CZ: {
            const uint64_t a = bit_mask(g.q0), b = bit_mask(g.q1);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & a) && (i & b)) amps_[i] = -amps_[i];
            break;
        }
        case GateKind::Toffoli: {
            const uint64_t c0 = bit_mask(g.q0), c1 = bit_mask(g.q1), t = bit_mask(g.q2);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & c0) && (i & c1) && (i & t)) std::swap(amps_[i], amps_[i ^ t]);
            break;
        }
    }
}

double PureState::prob_one(int qubit) const {
    check_qubit(qubit);
    const uint64_t m = bit_mask(qubit);
    double p = 0.0;
    for (uint64_t i = 0; i < dim(); ++i)
        if (i & m) p += std::norm(amps_[i]);
    return p;
}

int PureState::measure(int qubit, Rng& rng) {
    if (is_leaked(qubit)) throw std::logic_error("PureState: cannot measure a leaked qubit");
    const double p1 = prob_one(qubit);
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    measure_forced(qubit, outcome);
    return outcome;
}

double PureState::measure_forced(int qubit, int outcome) {
    if (is_leaked(qubit)) throw std::logic_error("PureState: cannot measure a leaked qubit");
    const double p1 = prob_one(qubit);
    const double p = outcome ? p1 : 1.0 - p1;
    if (p < 1e-14) return 0.0;
    const uint64_t m = bit_mask(qubit);
    const double scale = 1.0 / std::sqrt(p);
    for (uint64_t i = 0; i < dim(); ++i) {
        const bool one = (i & m) != 0;
        if (one == (outcome != 0))
            amps_[i] *= scale;
        else
            amps_[i] = 0.0;
    }
    return p;
}

void PureState::reset(int qubit, Rng& rng) {
    if (measure(qubit, rng) == 1) apply(Gate::x(qubit));
}

double PureState::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

void PureState::inject_product(std::span<const int> qubits, std::span<const cplx> small_amps) {
    const size_t k = qubits.size();
    if (small_amps.size() != (size_t{1} << k))
        throw std::invalid_argument("inject_product: amplitude count mismatch");
    uint64_t subset = 0;
    for (int q : qubits) {
        check_qubit(q);
        subset |= bit_mask(q);
    }
    for (uint64_t i = 0; i < dim(); ++i) {
        if ((i & subset) && std::norm(amps_[i]) > 1e-24)
            throw std::logic_error("inject_product: target qubits are not in |0...0>");
    }
    // Walk indices with all target bits clear, fanning each out over the small state.
    for (uint64_t i = 0; i < dim(); ++i) {
        if (i & subset) continue;
        const cplx base = amps_[i];
        if (std::norm(base) == 0.0) continue;
        for (uint64_t s = 0; s < small_amps.size(); ++s) {
            uint64_t idx = i;
            for (size_t b = 0; b < k; ++b) {
                if ((s >> (k - 1 - b)) & 1) idx |= bit_mask(qubits[b]);
            }
            amps_[idx] = base * small_amps[s];
        }
    }
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("fidelity: qubit count mismatch");
    cplx inner{0, 0};
    for (uint64_t i = 0; i < a.dim(); ++i) inner += std::conj(a.amp(i)) * b.amp(i);
    return std::norm(inner);
}

cplx pauli_expectation(const PureState& state, uint64_t x_mask, uint64_t z_mask) {
    cplx e{0, 0};
    for (uint64_t i = 0; i < state.dim(); ++i) {
        const double sign = (std::popcount(i & z_mask) & 1) ? -1.0 : 1.0;
        e += std::conj(state.amp(i ^ x_mask)) * sign * state.amp(i);
    }
    return e;
}

Circuit& Circuit::gate(Gate g) {
    steps.push_back(Step::gate_step(g));
    return *this;
}
Circuit& Circuit::measure(int qubit) {
    steps.push_back(Step::measure_step(qubit));
    return *this;
}
Circuit& Circuit::leak_check(int qubit) {
    steps.push_back(Step::leak_check_step(qubit));
    return *this;
}

std::vector<int> run(const Circuit& circuit, PureState& state, Rng& rng) {
    if (circuit.n != state.num_qubits())
        throw std::invalid_argument("run: circuit and state sizes disagree");
    std::vector<int> transcript;
    for (const Step& step : circuit.steps) {
        switch (step.kind) {
            case Step::Kind::Gate:
                state.apply(step.gate);
                break;
            case Step::Kind::Measure:
                transcript.push_back(state.measure(step.qubit, rng));
                break;
            case Step::Kind::LeakCheck:
                transcript.push_back(state.is_leaked(step.qubit) ? 0 : 1);
                break;
        }
    }
    return transcript;
}

}  // namespace qeclab::sv
