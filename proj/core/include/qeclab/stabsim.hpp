#pragma once

#include <cstdint>
#include <vector>

#include "qeclab/pauli.hpp"
#include "qeclab/rng.hpp"
#include "qeclab/statevec.hpp"

namespace qeclab::stab {

/// Stabilizer state of n qubits as a generator tableau with sign bits,
/// bit-packed 64 columns per word. Destabilizer rows are kept alongside the
/// stabilizer rows so measurements run in O(n^2) without Gaussian elimination.
///
/// Leak flags follow the same contract as the dense simulator: a leaked qubit
/// participates in no gate and may not be measured.
class Tableau {
  public:
    explicit Tableau(int n);  // |0...0>, stabilizers +Z_1 ... +Z_n

    int num_qubits() const { return n_; }

    // Clifford gates. Any gate touching a leaked qubit acts as the identity.
    void h(int q);
    void x(int q);
    void y(int q);
    void z(int q);
    void s(int q);
    void sdg(int q);
    void cnot(int control, int target);
    void cz(int a, int b);

    struct MeasureResult {
        int outcome;
        bool deterministic;
    };

    /// Z-basis measurement. Deterministic when (+/-)Z_q is in the stabilizer
    /// group; otherwise a fair coin decides and the tableau collapses.
    MeasureResult measure_z(int q, Rng& rng);

    /// Like measure_z but a random outcome is steered to `desired` (used by the
    /// dense-simulator conformance oracle). Deterministic outcomes are returned
    /// as-is.
    MeasureResult measure_z_forced(int q, int desired);

    /// Projective reset to |0>.
    void reset(int q, Rng& rng);

    /// Applies a Pauli error: flips the sign of every generator that
    /// anticommutes with it. Involution: injecting twice restores all signs.
    void inject(const PauliError& e);

    bool is_leaked(int q) const { return leaked_[static_cast<size_t>(q)] != 0; }
    void set_leaked(int q, bool leaked) { leaked_[static_cast<size_t>(q)] = leaked; }

    // Stabilizer-row introspection, i in 0..n-1.
    bool stabilizer_x(int i, int q) const { return row_x(n_ + i, q); }
    bool stabilizer_z(int i, int q) const { return row_z(n_ + i, q); }
    bool stabilizer_sign(int i) const { return r_[static_cast<size_t>(n_ + i)] != 0; }

    /// Generators mutually commute and are independent (rank n). Meant for
    /// tests; O(n^3).
    bool invariants_hold() const;

    friend bool operator==(const Tableau&, const Tableau&) = default;

  private:
    void check_qubit(int q) const;
    uint64_t* xr(int i) { return &xz_[static_cast<size_t>(2 * i) * words_]; }
    uint64_t* zr(int i) { return &xz_[static_cast<size_t>(2 * i + 1) * words_]; }
    const uint64_t* xr(int i) const { return &xz_[static_cast<size_t>(2 * i) * words_]; }
    const uint64_t* zr(int i) const { return &xz_[static_cast<size_t>(2 * i + 1) * words_]; }
    bool row_x(int i, int q) const { return (xr(i)[q / 64] >> (q % 64)) & 1; }
    bool row_z(int i, int q) const { return (zr(i)[q / 64] >> (q % 64)) & 1; }
    void rowsum(int h, int i);  // row h := row i * row h with phase bookkeeping
    int measure_random_case(int q, int p, int forced_outcome);

    int n_;
    size_t words_;
    std::vector<uint64_t> xz_;  // interleaved x/z row pairs, 2n rows
    std::vector<uint8_t> r_;    // sign bit per row
    std::vector<char> leaked_;
};

/// Gate-value dispatch restricted to the Clifford set; Toffoli and P(theta)
/// are rejected (non-Clifford simulation lives in the dense backend only).
void apply_clifford(Tableau& t, const sv::Gate& gate);

}  // namespace qeclab::stab
