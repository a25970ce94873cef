#pragma once

#include <array>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

#include "qeclab/noise.hpp"
#include "qeclab/rng.hpp"
#include "qeclab/stabsim.hpp"
#include "qeclab/statevec.hpp"

namespace qeclab {

enum class OpKind {
    PrepZero,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    Cnot,
    Cz,
    Toffoli,
    PhaseTheta,
    Measure,
    Rest,
    LeakCheck,
};

struct Op {
    OpKind kind;
    std::array<int, 3> q{-1, -1, -1};
    int nq = 0;
    long location = 0;
    int outcome = -1;  // filled for Measure and LeakCheck entries
};

/// A single scripted fault, armed at one location of a run. For gate locations
/// `pauli[i]` (0=I, 1=X, 2=Y, 3=Z) is applied to touched qubit i after the
/// gate; for preparations any nonzero entry flips the prepared value; for
/// measurements it flips the reported outcome.
struct ArmedFault {
    long location = -1;
    std::array<uint8_t, 3> pauli{0, 0, 0};
};

namespace detail {

inline void be_h(sv::PureState& s, int q) { s.apply(sv::Gate::h(q)); }
inline void be_x(sv::PureState& s, int q) { s.apply(sv::Gate::x(q)); }
inline void be_y(sv::PureState& s, int q) { s.apply(sv::Gate::y(q)); }
inline void be_z(sv::PureState& s, int q) { s.apply(sv::Gate::z(q)); }
inline void be_s(sv::PureState& s, int q) { s.apply(sv::Gate::p(q)); }
inline void be_sdg(sv::PureState& s, int q) { s.apply(sv::Gate::p_dag(q)); }
inline void be_cnot(sv::PureState& s, int c, int t) { s.apply(sv::Gate::cnot(c, t)); }
inline void be_cz(sv::PureState& s, int a, int b) { s.apply(sv::Gate::cz(a, b)); }
inline int be_measure(sv::PureState& s, int q, Rng& rng) { return s.measure(q, rng); }
inline double be_measure_forced(sv::PureState& s, int q, int outcome) {
    return s.measure_forced(q, outcome);
}
inline void be_reset(sv::PureState& s, int q, Rng& rng) { s.reset(q, rng); }

inline void be_h(stab::Tableau& s, int q) { s.h(q); }
inline void be_x(stab::Tableau& s, int q) { s.x(q); }
inline void be_y(stab::Tableau& s, int q) { s.y(q); }
inline void be_z(stab::Tableau& s, int q) { s.z(q); }
inline void be_s(stab::Tableau& s, int q) { s.s(q); }
inline void be_sdg(stab::Tableau& s, int q) { s.sdg(q); }
inline void be_cnot(stab::Tableau& s, int c, int t) { s.cnot(c, t); }
inline void be_cz(stab::Tableau& s, int a, int b) { s.cz(a, b); }
inline int be_measure(stab::Tableau& s, int q, Rng& rng) { return s.measure_z(q, rng).outcome; }
inline double be_measure_forced(stab::Tableau& s, int q, int outcome) {
    const auto res = s.measure_z_forced(q, outcome);
    if (res.deterministic) return res.outcome == outcome ? 1.0 : 0.0;
    return 0.5;
}
inline void be_reset(stab::Tableau& s, int q, Rng& rng) { s.reset(q, rng); }

}  // namespace detail

/// Drives a simulator backend while accounting for noise. Every primitive is
/// one "location"; stochastic noise, scripted single faults, and forced
/// measurement branches all key off the location/measurement stream, so a
/// protocol replayed with the same seed visits the same locations.
template <class Backend>
class Engine {
  public:
    explicit Engine(Backend& sim, NoiseModel noise = {}, Rng* rng = nullptr)
        : sim_(sim), noise_(noise), rng_(rng) {}

    Backend& sim() { return sim_; }
    const NoiseModel& noise() const { return noise_; }
    Rng& rng() {
        if (!rng_) throw std::logic_error("Engine: no random stream attached");
        return *rng_;
    }

    void prep_zero(int q) {
        const long loc = next_location(OpKind::PrepZero, {q});
        detail::be_reset(sim_, q, rng());
        bool flip = armed(loc);
        if (!quiet_noise() && noise_.eps_prep > 0 && rng().bernoulli(noise_.eps_prep)) flip = !flip;
        if (flip) detail::be_x(sim_, q);
    }

    void h(int q) { one_qubit(OpKind::H, q); }
    void x(int q) { one_qubit(OpKind::X, q); }
    void y(int q) { one_qubit(OpKind::Y, q); }
    void z(int q) { one_qubit(OpKind::Z, q); }
    void s(int q) { one_qubit(OpKind::S, q); }
    void sdg(int q) { one_qubit(OpKind::Sdg, q); }

    void cnot(int c, int t) { two_qubit(OpKind::Cnot, c, t); }
    void cz(int a, int b) { two_qubit(OpKind::Cz, a, b); }

    void toffoli(int c0, int c1, int t)
        requires std::same_as<Backend, sv::PureState>
    {
        const long loc = next_location(OpKind::Toffoli, {c0, c1, t});
        sim_.apply(sv::Gate::toffoli(c0, c1, t));
        fault_or_noise(loc, NoiseEventKind::ToffoliGate, {c0, c1, t});
    }

    void phase_theta(int q, double theta)
        requires std::same_as<Backend, sv::PureState>
    {
        const long loc = next_location(OpKind::PhaseTheta, {q});
        sim_.apply(sv::Gate::p_theta(q, theta));
        fault_or_noise(loc, NoiseEventKind::OneQubitGate, {q});
    }

    void p(int q)
        requires std::same_as<Backend, sv::PureState>
    {
        one_qubit(OpKind::S, q);
    }

    int measure(int q) {
        const long loc = next_location(OpKind::Measure, {q});
        int outcome;
        if (!forced_.empty()) {
            const int desired = forced_.front();
            forced_.pop_front();
            const double p = detail::be_measure_forced(sim_, q, desired);
            branch_prob_ *= p;
            if (p == 0.0) branch_impossible_ = true;
            outcome = desired;
        } else {
            outcome = detail::be_measure(sim_, q, rng());
        }
        if (armed(loc)) outcome ^= 1;
        if (!quiet_noise() && noise_.eps_meas > 0 && rng().bernoulli(noise_.eps_meas)) outcome ^= 1;
        if (recording_) transcript_.back().outcome = outcome;
        return outcome;
    }

    int leak_check(int q) {
        next_location(OpKind::LeakCheck, {q});
        const int outcome = sim_.is_leaked(q) ? 0 : 1;
        if (recording_) transcript_.back().outcome = outcome;
        return outcome;
    }

    void rest(std::span<const int> qs) {
        next_location(OpKind::Rest, {});
        if (quiet_noise() || noise_.eps_store <= 0) return;
        inject_pauli(sample_noise(noise_, NoiseEventKind::Rest, qs, sim_.num_qubits(), rng()));
    }

    // -- quiet scopes: ancilla construction/verification work ---------------
    class QuietScope {
      public:
        explicit QuietScope(Engine& e) : e_(e) { ++e_.quiet_depth_; }
        ~QuietScope() { --e_.quiet_depth_; }

      private:
        Engine& e_;
    };

    // -- scripted faults ------------------------------------------------------
    void arm_fault(ArmedFault f) { fault_ = f; }
    long cursor() const { return location_; }

    // -- forced measurement branches -----------------------------------------
    void force_outcomes(std::span<const int> bits) {
        forced_.assign(bits.begin(), bits.end());
        branch_prob_ = 1.0;
        branch_impossible_ = false;
    }
    double branch_probability() const { return branch_prob_; }
    bool branch_impossible() const { return branch_impossible_; }

    // -- transcript ------------------------------------------------------------
    void set_recording(bool on) {
        recording_ = on;
        if (on) transcript_.clear();
    }
    const std::vector<Op>& transcript() const { return transcript_; }

  private:
    bool quiet_noise() const { return quiet_depth_ > 0 && noise_.ideal_ancilla_work; }

    long next_location(OpKind kind, std::initializer_list<int> qs) {
        const long loc = location_++;
        if (recording_) {
            Op op{kind, {-1, -1, -1}, 0, loc};
            for (int q : qs) op.q[static_cast<size_t>(op.nq++)] = q;
            transcript_.push_back(op);
        }
        return loc;
    }

    bool armed(long loc) const { return fault_.location == loc && fault_.pauli[0] != 0; }

    void one_qubit(OpKind kind, int q) {
        const long loc = next_location(kind, {q});
        switch (kind) {
            case OpKind::H: detail::be_h(sim_, q); break;
            case OpKind::X: detail::be_x(sim_, q); break;
            case OpKind::Y: detail::be_y(sim_, q); break;
            case OpKind::Z: detail::be_z(sim_, q); break;
            case OpKind::S: detail::be_s(sim_, q); break;
            case OpKind::Sdg: detail::be_sdg(sim_, q); break;
            default: throw std::logic_error("Engine: bad one-qubit op");
        }
        fault_or_noise(loc, NoiseEventKind::OneQubitGate, {q});
    }

    void two_qubit(OpKind kind, int a, int b) {
        const long loc = next_location(kind, {a, b});
        if (kind == OpKind::Cnot)
            detail::be_cnot(sim_, a, b);
        else
            detail::be_cz(sim_, a, b);
        fault_or_noise(loc, NoiseEventKind::XorGate, {a, b});
    }

    void fault_or_noise(long loc, NoiseEventKind kind, std::initializer_list<int> qs) {
        if (fault_.location == loc) {
            int i = 0;
            for (int q : qs) {
                apply_pauli_code(q, fault_.pauli[static_cast<size_t>(i++)]);
            }
        }
        if (quiet_noise() || !noise_.any()) return;
        const std::span<const int> touched(qs.begin(), qs.size());
        inject_pauli(sample_noise(noise_, kind, touched, sim_.num_qubits(), rng()));
    }

    void apply_pauli_code(int q, uint8_t code) {
        switch (code) {
            case 1: detail::be_x(sim_, q); break;
            case 2: detail::be_y(sim_, q); break;
            case 3: detail::be_z(sim_, q); break;
            default: break;
        }
    }

    void inject_pauli(const stab::PauliError& e) {
        if (e.is_identity()) return;
        if constexpr (std::same_as<Backend, stab::Tableau>) {
            sim_.inject(e);
        } else {
            for (int q : e.support()) {
                const bool xb = e.x_bit(q), zb = e.z_bit(q);
                apply_pauli_code(q, xb && zb ? 2 : (xb ? 1 : 3));
            }
        }
    }

    Backend& sim_;
    NoiseModel noise_;
    Rng* rng_;
    long location_ = 0;
    int quiet_depth_ = 0;
    ArmedFault fault_{};
    std::deque<int> forced_;
    double branch_prob_ = 1.0;
    bool branch_impossible_ = false;
    bool recording_ = false;
    std::vector<Op> transcript_;
};

using DenseEngine = Engine<sv::PureState>;
using TableauEngine = Engine<stab::Tableau>;

}  // namespace qeclab
