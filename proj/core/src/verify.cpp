#include "qeclab/verify.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>

#include "qeclab/engine.hpp"
#include "qeclab/experiments.hpp"
#include "qeclab/gadgets.hpp"
#include "qeclab/hamming.hpp"
#include "qeclab/threshold.hpp"

namespace qeclab::verify {

namespace {

using sv::cplx;
using steane::CodeBlock;
using steane::Workspace;

constexpr double kTol = 1e-10;

// Generic logical amplitudes used wherever "any encoded state" is meant; both
// components nonzero and relatively dephased, so every logical error is visible.
const cplx kA{0.6, 0.0};
const cplx kB = 0.8 * std::polar(1.0, std::numbers::pi / 5);

struct Checker {
    CheckResult result;

    explicit Checker(std::string name) { result.name = std::move(name); }

    void expect(bool ok, const std::string& what) {
        if (ok) {
            ++result.passed;
        } else {
            ++result.failed;
            if (result.note.size() < 400) {
                result.note += (result.note.empty() ? "" : "; ") + what;
            }
        }
    }

    void expect_near(double value, double want, double tol, const std::string& what) {
        expect(std::abs(value - want) <= tol,
               what + " (got " + std::to_string(value) + ", want " + std::to_string(want) + ")");
    }
};

// Independent parity-check arithmetic, straight from the printed matrices.
constexpr int kHCanonical[3][7] = {
    {0, 0, 0, 1, 1, 1, 1},
    {0, 1, 1, 0, 0, 1, 1},
    {1, 0, 1, 0, 1, 0, 1},
};
constexpr int kHEncoder[3][7] = {
    {1, 0, 0, 1, 0, 1, 1},
    {0, 1, 0, 1, 1, 0, 1},
    {0, 0, 1, 1, 1, 1, 0},
};

int brute_syndrome(const int (*H)[7], int word /* bit 6-p+1... MSB-first */) {
    int s = 0;
    for (int r = 0; r < 3; ++r) {
        int parity = 0;
        for (int p = 0; p < 7; ++p) parity ^= ((word >> (6 - p)) & 1) & H[r][p];
        s = (s << 1) | parity;
    }
    return s;
}

const char* kEvenStrings[8] = {"0000000", "0001111", "0110011", "0111100",
                               "1010101", "1011010", "1100110", "1101001"};
const char* kOddStrings[8] = {"1111111", "1110000", "1001100", "1000011",
                              "0101010", "0100101", "0011001", "0010110"};

sv::PureState make_block_state(int n, const CodeBlock& block, cplx a = kA, cplx b = kB) {
    sv::PureState s(n);
    steane::inject_logical(s, block, a, b);
    return s;
}

void apply_pauli_at(DenseEngine& eng, const CodeBlock& block, int position, char kind) {
    const int q = block.at(position);
    if (kind == 'X') eng.x(q);
    if (kind == 'Y') eng.y(q);
    if (kind == 'Z') eng.z(q);
}

// Ancillas end a protocol in whatever computational state was measured; clear
// them before comparing full states against a reference with |0> ancillas.
void clear_ancillas(DenseEngine& eng, std::span<const int> anc) {
    for (int q : anc) {
        if (eng.measure(q) == 1) eng.x(q);
    }
}

// Sweep-case enumeration: every nontrivial Pauli pattern at gate locations,
// outcome flips at preparations and measurements.
struct SweepCase {
    long location;
    std::array<uint8_t, 3> pattern;
};

std::vector<SweepCase> sweep_cases(const std::vector<Op>& ops) {
    std::vector<SweepCase> cases;
    for (const Op& op : ops) {
        switch (op.kind) {
            case OpKind::PrepZero:
            case OpKind::Measure:
                cases.push_back({op.location, {1, 0, 0}});
                break;
            case OpKind::H:
            case OpKind::X:
            case OpKind::Y:
            case OpKind::Z:
            case OpKind::S:
            case OpKind::Sdg:
            case OpKind::PhaseTheta:
                for (uint8_t p = 1; p <= 3; ++p) cases.push_back({op.location, {p, 0, 0}});
                break;
            case OpKind::Cnot:
            case OpKind::Cz:
                for (uint8_t p0 = 0; p0 <= 3; ++p0)
                    for (uint8_t p1 = 0; p1 <= 3; ++p1)
                        if (p0 || p1) cases.push_back({op.location, {p0, p1, 0}});
                break;
            case OpKind::Toffoli:
                for (uint8_t p0 = 0; p0 <= 3; ++p0)
                    for (uint8_t p1 = 0; p1 <= 3; ++p1)
                        for (uint8_t p2 = 0; p2 <= 3; ++p2)
                            if (p0 || p1 || p2) cases.push_back({op.location, {p0, p1, p2}});
                break;
            case OpKind::Rest:
            case OpKind::LeakCheck:
                break;
        }
    }
    return cases;
}

}  // namespace

// ---------------------------------------------------------------------------

CheckResult check_hamming() {
    Checker c("hamming: codewords, columns, decoding");
    using hamming::Word7;

    // Brute-force codeword set from the printed matrix.
    std::vector<int> brute;
    for (int w = 0; w < 128; ++w)
        if (brute_syndrome(kHCanonical, w) == 0) brute.push_back(w);
    c.expect(brute.size() == 16, "16 codewords");

    const auto& set = hamming::codewords();
    int even = 0, odd = 0;
    for (int w : brute) {
        const Word7 word(static_cast<uint8_t>(w));
        c.expect(hamming::parity_check(word).trivial(), "parity check annihilates " + word.to_string());
        (word.even_weight() ? even : odd)++;
        bool in_even = false, in_odd = false;
        for (const auto& x : set.even) in_even |= x == word;
        for (const auto& x : set.odd) in_odd |= x == word;
        c.expect(in_even == word.even_weight() && in_odd == !word.even_weight(),
                 "codewords() contains " + word.to_string() + " in the right half");
    }
    c.expect(even == 8 && odd == 8, "8 even + 8 odd");

    // Column p of the canonical matrix is binary p.
    for (int p = 1; p <= 7; ++p) {
        const int col = (kHCanonical[0][p - 1] << 2) | (kHCanonical[1][p - 1] << 1) |
                        kHCanonical[2][p - 1];
        c.expect(col == p, "column equals index at " + std::to_string(p));
        c.expect(hamming::parity_check(Word7(0).with_flip(p)).value() == p,
                 "syndrome of e_p at " + std::to_string(p));
    }

    // All 112 single-flip decodings.
    for (int w : brute) {
        const Word7 cw(static_cast<uint8_t>(w));
        for (int p = 1; p <= 7; ++p) {
            const auto dec = hamming::decode_single(cw.with_flip(p));
            c.expect(dec.corrected == cw && dec.error_position == p,
                     "decode " + cw.to_string() + " flip " + std::to_string(p));
        }
        const auto clean = hamming::decode_single(cw);
        c.expect(clean.corrected == cw && clean.error_position == 0, "decode clean word");
    }

    // The documented two-flip misdecode: 1 and 2 flipped lands on {1,2,3}.
    const auto mis = hamming::decode_single(Word7(0).with_flip(1).with_flip(2));
    c.expect(mis.error_position == 3 && mis.corrected == Word7(0b1110000),
             "double flip misdecodes to the weight-3 codeword");

    // Even subcode closed under XOR; complements of even words are odd words.
    for (const auto& u : set.even)
        for (const auto& v : set.even) {
            const Word7 s = u ^ v;
            bool in_even = false;
            for (const auto& x : set.even) in_even |= x == s;
            c.expect(in_even && s.even_weight(), "even subcode closure");
        }
    for (const auto& u : set.even) {
        bool in_odd = false;
        for (const auto& x : set.odd) in_odd |= x == u.complement();
        c.expect(in_odd, "complement of even word is odd word");
    }
    return c.result;
}

CheckResult check_matrix_forms() {
    Checker c("hamming: encoder-form column permutation");
    for (int w = 0; w < 128; ++w) {
        // Relabel: bit j of the encoder-form word sits at canonical column perm[j].
        int relabeled = 0;
        for (int j = 1; j <= 7; ++j) {
            const int bit = (w >> (7 - j)) & 1;
            const int p = hamming::kEncoderToCanonicalColumn[static_cast<size_t>(j - 1)];
            relabeled |= bit << (7 - p);
        }
        const bool enc_zero = brute_syndrome(kHEncoder, w) == 0;
        const bool canon_zero = brute_syndrome(kHCanonical, relabeled) == 0;
        c.expect(enc_zero == canon_zero, "both forms annihilate the same relabeled set");
        const auto lib = hamming::CheckMatrix::encoder_form().syndrome(
            hamming::Word7(static_cast<uint8_t>(w)));
        c.expect(lib.value() == brute_syndrome(kHEncoder, w), "encoder-form syndrome matches");
    }
    return c.result;
}

CheckResult check_logical_states() {
    Checker c("steane: logical state amplitudes");
    const auto zero = steane::logical_zero();
    const auto one = steane::logical_one();
    const double amp = 1.0 / std::sqrt(8.0);

    std::array<bool, 128> in_even{}, in_odd{};
    for (const char* s : kEvenStrings) in_even[hamming::Word7::parse(s).packed()] = true;
    for (const char* s : kOddStrings) in_odd[hamming::Word7::parse(s).packed()] = true;

    for (uint64_t i = 0; i < 128; ++i) {
        const double want_zero = in_even[i] ? amp : 0.0;
        const double want_one = in_odd[i] ? amp : 0.0;
        c.expect(std::abs(zero.amp(i) - cplx{want_zero, 0}) < kTol, "logical zero amplitude");
        c.expect(std::abs(one.amp(i) - cplx{want_one, 0}) < kTol, "logical one amplitude");
    }
    c.expect(sv::fidelity(zero, one) < kTol, "orthogonality");
    return c.result;
}

CheckResult check_rotated_basis() {
    Checker c("steane: bitwise Hadamard on the logical basis");
    const double r = 1.0 / std::sqrt(2.0);
    {
        sv::PureState s = steane::logical_zero();
        Rng rng(1);
        DenseEngine eng(s, {}, &rng);
        gadgets::logical_hadamard(eng, CodeBlock::contiguous(0));
        c.expect(sv::fidelity(s, steane::logical_state(r, r)) >= 1 - kTol, "|0> -> (|0>+|1>)/sqrt2");
    }
    {
        sv::PureState s = steane::logical_one();
        Rng rng(1);
        DenseEngine eng(s, {}, &rng);
        gadgets::logical_hadamard(eng, CodeBlock::contiguous(0));
        c.expect(sv::fidelity(s, steane::logical_state(r, -r)) >= 1 - kTol, "|1> -> (|0>-|1>)/sqrt2");
    }
    return c.result;
}

CheckResult check_encoder_circuit() {
    Checker c("steane: encoder circuit");
    const auto circuit = steane::encoder_circuit();

    const auto expected_in_wire_labels = [](cplx a, cplx b) {
        sv::PureState s(7);
        std::vector<cplx> amps(128, cplx{0, 0});
        const double w8 = 1.0 / std::sqrt(8.0);
        const auto wire_index = [](hamming::Word7 w) {
            int idx = 0;
            for (int k = 1; k <= 7; ++k) {
                const int p = steane::kEncoderWireToCanonical[static_cast<size_t>(k - 1)];
                idx |= w.bit(p) << (7 - k);
            }
            return idx;
        };
        for (const auto& w : hamming::codewords().even) amps[static_cast<size_t>(wire_index(w))] = a * w8;
        for (const auto& w : hamming::codewords().odd) amps[static_cast<size_t>(wire_index(w))] = b * w8;
        const std::array<int, 7> all = {0, 1, 2, 3, 4, 5, 6};
        s.inject_product(all, amps);
        return s;
    };

    const double r = 1.0 / std::sqrt(2.0);
    const std::array<std::pair<cplx, cplx>, 3> inputs = {{{1.0, 0.0}, {0.0, 1.0}, {r, r}}};
    for (const auto& [a, b] : inputs) {
        sv::PureState s(7);
        const std::array<int, 1> q0 = {0};
        const std::array<cplx, 2> in = {a, b};
        s.inject_product(q0, in);
        Rng rng(1);
        sv::run(circuit, s, rng);
        c.expect(sv::fidelity(s, expected_in_wire_labels(a, b)) >= 1 - kTol,
                 "encoder output matches the relabeled logical state");
    }
    return c.result;
}

CheckResult check_syndrome_lookup() {
    Checker c("steane: single-Pauli syndrome table");
    c.expect(steane::syndrome_lookup(stab::PauliError::identity(7)).trivial(), "identity -> zero");
    for (int p = 1; p <= 7; ++p) {
        for (char kind : {'X', 'Y', 'Z'}) {
            const auto s = steane::syndrome_lookup(stab::PauliError::single(7, p - 1, kind));
            const int want_bit = (kind == 'X' || kind == 'Y') ? p : 0;
            const int want_phase = (kind == 'Z' || kind == 'Y') ? p : 0;
            c.expect(s.bit_flip.value() == want_bit && s.phase_flip.value() == want_phase,
                     "lookup at position " + std::to_string(p));
        }
    }
    return c.result;
}

CheckResult check_shor_state() {
    Checker c("shor ancilla: construction and verification");
    sv::PureState s(5);
    Rng rng(11);
    DenseEngine eng(s, {}, &rng);
    const std::array<int, 4> cat = {0, 1, 2, 3};

    const std::array<int, 1> forced = {0};
    eng.force_outcomes(forced);
    steane::prepare_verified_cat4(eng, cat, 4);
    c.expect_near(eng.branch_probability(), 1.0, 1e-12, "noiseless verification accepts surely");

    for (int q : cat) eng.h(q);  // cat -> Shor state
    const double amp = 1.0 / std::sqrt(8.0);
    for (uint64_t i = 0; i < 32; ++i) {
        const int weight = std::popcount(i >> 1);  // cat occupies the top 4 bits
        const bool even = (weight & 1) == 0;
        const bool verifier_zero = (i & 1) == 0;
        const double want = (even && verifier_zero) ? amp : 0.0;
        c.expect(std::abs(s.amp(i) - cplx{want, 0}) < kTol, "Shor state amplitude");
    }
    return c.result;
}

CheckResult check_extraction_agreement() {
    Checker c("extraction: both methods reproduce the lookup syndrome");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11, 12, 13};
    const Workspace ws{anc};

    for (int p = 0; p <= 7; ++p) {  // p = 0 means no error
        for (char kind : {'X', 'Y', 'Z'}) {
            const auto expected = p == 0 ? steane::Syndrome{}
                               : steane::syndrome_lookup(stab::PauliError::single(7, p - 1, kind));
            for (const auto method : {steane::Method::Shor, steane::Method::Steane}) {
                sv::PureState s = make_block_state(14, block);
                Rng rng(static_cast<uint64_t>(100 + p * 8 + kind) ^ (method == steane::Method::Shor ? 0 : 1024));
                DenseEngine eng(s, {}, &rng);
                if (p > 0) apply_pauli_at(eng, block, p, kind);
                const auto got = method == steane::Method::Shor
                                     ? steane::extract_syndrome_shor(eng, block, ws)
                                     : steane::extract_syndrome_steane(eng, block, ws);
                c.expect(got == expected, "syndrome at position " + std::to_string(p));
            }
            if (p == 0) break;  // one identity case is enough
        }
    }
    return c.result;
}

CheckResult check_recovery_oracle() {
    Checker c("recovery: all 21 single Paulis, both methods");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11, 12, 13};
    const Workspace ws{anc};

    for (const auto method : {steane::Method::Shor, steane::Method::Steane}) {
        for (int p = 1; p <= 7; ++p) {
            for (char kind : {'X', 'Y', 'Z'}) {
                sv::PureState s = make_block_state(14, block);
                const sv::PureState ref = s;
                Rng rng(static_cast<uint64_t>(7777 + p * 16 + kind));
                DenseEngine eng(s, {}, &rng);
                apply_pauli_at(eng, block, p, kind);
                steane::recovery_cycle(eng, block, ws, method);
                clear_ancillas(eng, anc);
                c.expect(sv::fidelity(s, ref) >= 1 - kTol,
                         std::string("cycle restores ") + kind + " at " + std::to_string(p));
            }
        }
    }
    return c.result;
}

CheckResult check_double_errors() {
    Checker c("recovery: double errors give the documented logical faults");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const Workspace ws{anc};

    const auto run_case = [&](int i, int j, char kind, const sv::PureState& want,
                              const std::string& what) {
        sv::PureState s = make_block_state(13, block);
        Rng rng(static_cast<uint64_t>(31337 + i * 64 + j * 8 + kind));
        DenseEngine eng(s, {}, &rng);
        apply_pauli_at(eng, block, i, kind);
        apply_pauli_at(eng, block, j, kind);
        steane::recovery_cycle(eng, block, ws, steane::Method::Shor);
        clear_ancillas(eng, anc);
        c.expect(sv::fidelity(s, want) >= 1 - kTol, what);
    };

    const sv::PureState flipped = [&] {
        sv::PureState s(13);
        steane::inject_logical(s, block, kB, kA);  // X_L (a|0>+b|1>) = b|0>+a|1>
        return s;
    }();
    const sv::PureState phased = [&] {
        sv::PureState s(13);
        steane::inject_logical(s, block, kA, -kB);  // Z_L
        return s;
    }();

    for (int i = 1; i <= 7; ++i) {
        for (int j = i + 1; j <= 7; ++j) {
            run_case(i, j, 'X', flipped, "two bit flips -> logical NOT");
            run_case(i, j, 'Z', phased, "two phase flips -> logical Z");
        }
    }

    // A bit flip and a phase flip on different qubits: recovery succeeds.
    for (int i = 1; i <= 7; ++i) {
        for (int j = 1; j <= 7; ++j) {
            if (i == j) continue;
            sv::PureState s = make_block_state(13, block);
            const sv::PureState ref = s;
            Rng rng(static_cast<uint64_t>(99 + i * 8 + j));
            DenseEngine eng(s, {}, &rng);
            apply_pauli_at(eng, block, i, 'X');
            apply_pauli_at(eng, block, j, 'Z');
            steane::recovery_cycle(eng, block, ws, steane::Method::Shor);
            clear_ancillas(eng, anc);
            c.expect(sv::fidelity(s, ref) >= 1 - kTol, "mixed X/Z pair is corrected");
        }
    }
    return c.result;
}

CheckResult check_measurement_protocols() {
    Checker c("logical measurement: destructive and nondestructive");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11, 12};
    const Workspace ws{anc};

    // Destructive readout tolerates any single bit-flip error.
    for (int value = 0; value <= 1; ++value) {
        for (int p = 0; p <= 7; ++p) {
            sv::PureState s(13);
            steane::inject_logical(s, block, value ? cplx{0} : cplx{1}, value ? cplx{1} : cplx{0});
            Rng rng(static_cast<uint64_t>(55 + value * 8 + p));
            DenseEngine eng(s, {}, &rng);
            if (p > 0) apply_pauli_at(eng, block, p, 'X');
            c.expect(steane::measure_logical_destructive(eng, block) == value,
                     "destructive readout with one flipped bit");
        }
    }

    // Nondestructive measurement: deterministic on the basis states.
    for (int value = 0; value <= 1; ++value) {
        sv::PureState s(13);
        steane::inject_logical(s, block, value ? cplx{0} : cplx{1}, value ? cplx{1} : cplx{0});
        const sv::PureState ref = s;
        Rng rng(static_cast<uint64_t>(200 + value));
        DenseEngine eng(s, {}, &rng);
        const int m = steane::measure_logical_nondestructive(eng, block, ws, false);
        c.expect(m == value, "nondestructive outcome");
        // The parity ancilla ends in |m>; flip it back before comparing.
        if (m == 1) eng.x(ws.at(0));
        c.expect(sv::fidelity(s, ref) >= 1 - kTol, "block intact after measurement");
    }

    // Born projection at |a|^2 = 5/8, branch probabilities exact.
    for (int outcome = 0; outcome <= 1; ++outcome) {
        sv::PureState s(13);
        steane::inject_logical(s, block, std::sqrt(5.0 / 8.0), std::sqrt(3.0 / 8.0));
        Rng rng(777);
        DenseEngine eng(s, {}, &rng);
        const std::array<int, 2> forced = {outcome, outcome};
        eng.force_outcomes(forced);
        const int m = steane::measure_logical_nondestructive(eng, block, ws, false);
        c.expect(m == outcome, "forced branch outcome");
        c.expect_near(eng.branch_probability(), outcome ? 3.0 / 8.0 : 5.0 / 8.0, 1e-12,
                      "projection probability");
        if (m == 1) eng.x(ws.at(0));
        sv::PureState want(13);
        steane::inject_logical(want, block, outcome ? cplx{0} : cplx{1}, outcome ? cplx{1} : cplx{0});
        c.expect(sv::fidelity(s, want) >= 1 - kTol, "projected onto the logical basis state");
    }
    return c.result;
}

CheckResult check_ft_zero_prep() {
    Checker c("fault-tolerant |0>_code preparation");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11, 12};
    const Workspace ws{anc};
    const auto zero = [&] {
        sv::PureState s(13);
        steane::inject_logical(s, block, 1.0, 0.0);
        return s;
    }();

    for (uint64_t seed = 1; seed <= 5; ++seed) {
        sv::PureState s(13);
        Rng rng(seed);
        DenseEngine eng(s, {}, &rng);
        steane::prepare_logical_zero_ft(eng, block, ws);
        clear_ancillas(eng, anc);
        c.expect(sv::fidelity(s, zero) >= 1 - kTol, "noiseless preparation is exact");
    }

    // The outcome-1 branch: start from |1111111> instead of |0000000>.
    {
        sv::PureState s(13);
        Rng rng(99);
        DenseEngine eng(s, {}, &rng);
        for (int p = 1; p <= 7; ++p) eng.x(block.at(p));
        steane::recovery_cycle(eng, block, ws.from(1), steane::Method::Shor);
        const int m = steane::measure_logical_nondestructive(eng, block, ws, true);
        c.expect(m == 1, "odd-parity start state reads logical one");
        if (m == 1)
            for (int p = 1; p <= 7; ++p) eng.x(block.at(p));
        if (steane::measure_logical_nondestructive(eng, block, ws, true) != 0)
            c.expect(false, "bitwise NOT flips to logical zero");
        clear_ancillas(eng, anc);
        c.expect(sv::fidelity(s, zero) >= 1 - kTol, "outcome-1 branch lands on logical zero");
    }
    return c.result;
}

CheckResult check_transversal_gates() {
    Checker c("transversal gates: logical action and code-space preservation");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc5 = {7, 8, 9, 10, 11};
    const Workspace ws{anc5};
    const double r = 1.0 / std::sqrt(2.0);

    const auto check_gate = [&](const std::string& name, auto&& gate, cplx wa, cplx wb) {
        sv::PureState s = make_block_state(13, block);
        Rng rng(std::hash<std::string>{}(name) & 0xffff);
        DenseEngine eng(s, {}, &rng);
        gate(eng);
        sv::PureState want(13);
        steane::inject_logical(want, block, wa, wb);
        c.expect(sv::fidelity(s, want) >= 1 - kTol, name + " acts as the logical gate");
        c.expect(steane::extract_syndrome_shor(eng, block, ws).trivial(),
                 name + " preserves the code space");
    };

    check_gate("bitwise NOT", [&](DenseEngine& e) { gadgets::logical_not(e, block); }, kB, kA);
    check_gate("weight-3 NOT", [&](DenseEngine& e) { gadgets::logical_not_weight3(e, block); }, kB,
               kA);
    check_gate("bitwise Hadamard", [&](DenseEngine& e) { gadgets::logical_hadamard(e, block); },
               (kA + kB) * r, (kA - kB) * r);
    check_gate("bitwise P^-1 (logical P)", [&](DenseEngine& e) { gadgets::logical_phase(e, block); },
               kA, cplx{0, 1} * kB);

    // logical_phase on |1>: interference against the ideal action on a superposition.
    {
        sv::PureState s(13);
        steane::inject_logical(s, block, r, r);
        Rng rng(5);
        DenseEngine eng(s, {}, &rng);
        gadgets::logical_phase(eng, block);
        sv::PureState want(13);
        steane::inject_logical(want, block, r, cplx{0, 1} * r);
        c.expect(sv::fidelity(s, want) >= 1 - kTol, "logical P phases |1> by i");
    }

    // Transversal XOR: the four logical basis states.
    const auto src = CodeBlock::contiguous(0);
    const auto dst = CodeBlock::contiguous(7);
    for (int x = 0; x <= 1; ++x) {
        for (int y = 0; y <= 1; ++y) {
            sv::PureState s(14);
            steane::inject_logical(s, src, x ? cplx{0} : cplx{1}, x ? cplx{1} : cplx{0});
            steane::inject_logical(s, dst, y ? cplx{0} : cplx{1}, y ? cplx{1} : cplx{0});
            Rng rng(static_cast<uint64_t>(40 + x * 2 + y));
            DenseEngine eng(s, {}, &rng);
            gadgets::logical_xor(eng, src, dst);
            sv::PureState want(14);
            const int ty = x ^ y;
            steane::inject_logical(want, src, x ? cplx{0} : cplx{1}, x ? cplx{1} : cplx{0});
            steane::inject_logical(want, dst, ty ? cplx{0} : cplx{1}, ty ? cplx{1} : cplx{0});
            c.expect(sv::fidelity(s, want) >= 1 - kTol, "logical CNOT truth table");
        }
    }

    // Logical Bell pair, checked at the full dense scale (two blocks + 7-qubit
    // ancilla = 21 qubits) with Steane-state extraction on both blocks.
    {
        sv::PureState s(21);
        steane::inject_logical(s, src, r, r);
        steane::inject_logical(s, dst, 1.0, 0.0);
        Rng rng(77);
        DenseEngine eng(s, {}, &rng);
        gadgets::logical_xor(eng, src, dst);

        sv::PureState want(21);
        {
            std::vector<cplx> amps(uint64_t{1} << 14, cplx{0, 0});
            const double w = r / 8.0;  // (1/sqrt2) * (1/sqrt8)^2
            for (const auto& u : hamming::codewords().even)
                for (const auto& v : hamming::codewords().even)
                    amps[static_cast<size_t>((u.packed() << 7) | v.packed())] = w;
            for (const auto& u : hamming::codewords().odd)
                for (const auto& v : hamming::codewords().odd)
                    amps[static_cast<size_t>((u.packed() << 7) | v.packed())] = w;
            std::array<int, 14> qubits{};
            for (int i = 0; i < 14; ++i) qubits[static_cast<size_t>(i)] = i;
            want.inject_product(qubits, amps);
        }
        c.expect(sv::fidelity(s, want) >= 1 - kTol, "logical Bell state");

        const std::vector<int> anc7 = {14, 15, 16, 17, 18, 19, 20};
        const Workspace ws7{anc7};
        c.expect(steane::extract_syndrome_steane(eng, src, ws7).trivial(),
                 "Bell source block stays in code space");
        c.expect(steane::extract_syndrome_steane(eng, dst, ws7).trivial(),
                 "Bell target block stays in code space");
    }
    return c.result;
}

CheckResult check_transversality_structure() {
    Checker c("first law: structural transversality");
    const auto block = CodeBlock::contiguous(0);

    const auto gate_ops = [](const std::vector<Op>& ops) {
        std::vector<Op> out;
        for (const Op& op : ops)
            if (op.kind != OpKind::PrepZero && op.kind != OpKind::Measure &&
                op.kind != OpKind::Rest && op.kind != OpKind::LeakCheck)
                out.push_back(op);
        return out;
    };

    const auto record = [&](auto&& body, int n) {
        sv::PureState s(n);
        Rng rng(3);
        DenseEngine eng(s, {}, &rng);
        eng.set_recording(true);
        body(eng);
        return eng.transcript();
    };

    // Every transversal logical gate touches each physical qubit at most once.
    const auto check_once = [&](const std::string& name, const std::vector<Op>& ops) {
        std::array<int, 24> touches{};
        for (const Op& op : gate_ops(ops))
            for (int i = 0; i < op.nq; ++i) ++touches[static_cast<size_t>(op.q[static_cast<size_t>(i)])];
        bool ok = true;
        for (int t : touches) ok = ok && t <= 1;
        c.expect(ok, name + " touches each qubit at most once");
    };

    check_once("bitwise NOT", record([&](DenseEngine& e) { gadgets::logical_not(e, block); }, 7));
    check_once("weight-3 NOT",
               record([&](DenseEngine& e) { gadgets::logical_not_weight3(e, block); }, 7));
    check_once("bitwise Hadamard",
               record([&](DenseEngine& e) { gadgets::logical_hadamard(e, block); }, 7));
    check_once("bitwise P^-1", record([&](DenseEngine& e) { gadgets::logical_phase(e, block); }, 7));

    {
        const auto ops =
            record([&](DenseEngine& e) { gadgets::logical_xor(e, block, CodeBlock::contiguous(7)); }, 14);
        check_once("transversal XOR", ops);
        c.expect(gate_ops(ops).size() == 7, "transversal XOR uses exactly 7 physical XORs");
        bool positional = true;
        for (const Op& op : gate_ops(ops))
            positional = positional && op.kind == OpKind::Cnot && op.q[1] == op.q[0] + 7;
        c.expect(positional, "transversal XOR is position-wise");
    }

    // Shor extraction: per preparation epoch, no ancilla qubit couples to the
    // data more than once, and each syndrome uses 24 data-coupled XORs.
    {
        const std::vector<int> anc = {7, 8, 9, 10, 11};
        const auto ops = record(
            [&](DenseEngine& e) { steane::extract_syndrome_shor(e, block, Workspace{anc}); }, 13);
        std::array<int, 24> epoch{};
        std::map<std::pair<int, int>, int> coupled;  // (ancilla qubit, epoch) -> count
        int total_coupled = 0;
        const auto is_data = [](int q) { return q >= 0 && q < 7; };
        for (const Op& op : ops) {
            if (op.kind == OpKind::PrepZero) ++epoch[static_cast<size_t>(op.q[0])];
            if (op.kind != OpKind::Cnot) continue;
            const bool d0 = is_data(op.q[0]), d1 = is_data(op.q[1]);
            if (d0 == d1) continue;  // ancilla-internal (cascade/verification) or data-internal
            const int a = d0 ? op.q[1] : op.q[0];
            ++coupled[{a, epoch[static_cast<size_t>(a)]}];
            ++total_coupled;
        }
        bool once = true;
        for (const auto& [key, count] : coupled) once = once && count <= 1;
        c.expect(once, "no ancilla qubit couples to the data twice in one use");
        c.expect(total_coupled == 24, "24 data-coupled XORs per full syndrome");
    }
    return c.result;
}

CheckResult check_toffoli_branches() {
    Checker c("Toffoli gadget: every branch, every input (block size 1)");
    const std::array<int, 3> anc = {0, 1, 2};
    const int cat = 3;
    const std::array<int, 3> data = {4, 5, 6};

    std::vector<std::array<cplx, 8>> inputs;
    for (int k = 0; k < 8; ++k) {
        std::array<cplx, 8> in{};
        in[static_cast<size_t>(k)] = 1.0;
        inputs.push_back(in);
    }
    Rng state_rng(0xABCD);
    for (int k = 0; k < 10; ++k) {  // random (generally entangled) data states
        std::array<cplx, 8> in{};
        double norm = 0;
        for (auto& v : in) {
            v = cplx{state_rng.uniform() - 0.5, state_rng.uniform() - 0.5};
            norm += std::norm(v);
        }
        for (auto& v : in) v /= std::sqrt(norm);
        inputs.push_back(in);
    }

    for (size_t input_idx = 0; input_idx < inputs.size(); ++input_idx) {
        const auto& in = inputs[input_idx];
        std::array<cplx, 8> ideal{};
        for (uint64_t i = 0; i < 8; ++i) {
            // Toffoli permutes |110> <-> |111>.
            const uint64_t j = (i >> 1) == 3 ? i ^ 1 : i;
            ideal[j] = in[i];
        }
        double total_prob = 0;
        for (int branch = 0; branch < 16; ++branch) {
            const int mb = branch & 1, w = (branch >> 1) & 1, m2 = (branch >> 2) & 1,
                      m1 = (branch >> 3) & 1;
            sv::PureState s(7);
            s.inject_product(data, in);
            Rng rng(static_cast<uint64_t>(5000 + branch));
            DenseEngine eng(s, {}, &rng);
            const std::array<int, 5> forced = {mb, mb, w, m2, m1};
            eng.force_outcomes(forced);
            const auto out = gadgets::logical_toffoli(eng, anc, data, cat);
            if (eng.branch_impossible()) continue;
            total_prob += eng.branch_probability();
            c.expect(out.w == w && out.m2 == m2 && out.m1 == m1, "forced outcomes readback");

            // Clear the measured registers, then compare against the ideal output.
            for (int q : data) {
                if (eng.measure(q) == 1) eng.x(q);
            }
            if (eng.measure(cat) == 1) eng.x(cat);
            sv::PureState want(7);
            want.inject_product(anc, ideal);
            c.expect(sv::fidelity(s, want) >= 1 - kTol,
                     "branch output is the ideal Toffoli (input " + std::to_string(input_idx) +
                         ", branch " + std::to_string(branch) + ")");
        }
        c.expect_near(total_prob, 1.0, kTol, "branch probabilities sum to 1");
    }

    // The odd-parity preparation branch repairs to the same |A> state.
    for (int mb = 0; mb <= 1; ++mb) {
        sv::PureState s(7);
        Rng rng(42);
        DenseEngine eng(s, {}, &rng);
        const std::array<int, 2> forced = {mb, mb};
        eng.force_outcomes(forced);
        gadgets::prepare_toffoli_ancilla(eng, anc, cat);
        if (eng.measure(cat) == 1) eng.x(cat);
        sv::PureState want(7);
        const std::array<cplx, 8> a_state = {0.5, 0, 0.5, 0, 0.5, 0, 0, 0.5};  // |000>+|010>+|100>+|111>
        want.inject_product(anc, a_state);
        c.expect(sv::fidelity(s, want) >= 1 - kTol,
                 mb ? "odd parity branch repaired by NOT" : "even parity branch is |A>");
        c.expect_near(eng.branch_probability(), 0.5, 1e-12, "preparation branch probability");
    }
    return c.result;
}

CheckResult check_toffoli_skeleton_b7() {
    Checker c("Toffoli gadget: Clifford skeleton at block size 7");
    const std::array<CodeBlock, 3> anc = {CodeBlock::contiguous(0), CodeBlock::contiguous(7),
                                          CodeBlock::contiguous(14)};
    const std::array<CodeBlock, 3> data = {CodeBlock::contiguous(21), CodeBlock::contiguous(28),
                                           CodeBlock::contiguous(35)};
    for (int ab = 0; ab < 4; ++ab) {
        const int a = (ab >> 1) & 1, b = ab & 1;  // ancilla branch |a, b, ab>
        for (int in = 0; in < 8; ++in) {
            const int x = (in >> 2) & 1, y = (in >> 1) & 1, z = in & 1;
            stab::Tableau t(42);
            Rng rng(static_cast<uint64_t>(9000 + ab * 8 + in));
            TableauEngine eng(t, {}, &rng);
            steane::encode_logical(eng, anc[0], a);
            steane::encode_logical(eng, anc[1], b);
            steane::encode_logical(eng, anc[2], a & b);
            steane::encode_logical(eng, data[0], x);
            steane::encode_logical(eng, data[1], y);
            steane::encode_logical(eng, data[2], z);
            gadgets::toffoli_skeleton_b7(eng, anc, data);
            const int ox = steane::measure_logical_destructive(eng, anc[0]);
            const int oy = steane::measure_logical_destructive(eng, anc[1]);
            const int oz = steane::measure_logical_destructive(eng, anc[2]);
            c.expect(ox == x && oy == y && oz == (z ^ (x & y)),
                     "skeleton maps |" + std::to_string(x) + std::to_string(y) + std::to_string(z) +
                         "> correctly in ancilla branch " + std::to_string(ab));
        }
    }
    return c.result;
}

CheckResult check_rotation_gadgets() {
    Checker c("rotation gadgets: exact branches");
    const cplx phase0{0.6, 0.8};  // e^{i theta0} = (3+4i)/5

    // All four first-attempt branches of the Toffoli rotation.
    double total = 0;
    for (int branch = 0; branch < 4; ++branch) {
        const int m0 = (branch >> 1) & 1, m1 = branch & 1;
        sv::PureState s(3);
        const std::array<int, 1> dq = {0};
        const std::array<cplx, 2> in = {kA, kB};
        s.inject_product(dq, in);
        Rng rng(static_cast<uint64_t>(31 + branch));
        DenseEngine eng(s, {}, &rng);
        // Failure branches retry; force the follow-up attempt to succeed.
        const std::array<int, 4> forced = {m0, m1, 0, 0};
        eng.force_outcomes(forced);
        const int attempts = gadgets::rotate_theta0(eng, 0, {1, 2});
        const double first_prob = branch == 0 ? 5.0 / 8.0 : 1.0 / 8.0;
        const double want_prob = branch == 0 ? first_prob : first_prob * 5.0 / 8.0;
        c.expect_near(eng.branch_probability(), want_prob, 1e-12, "branch probability");
        total += first_prob;
        c.expect(attempts == (branch == 0 ? 1 : 2), "attempt count");
        sv::PureState want(3);
        const std::array<cplx, 2> out = {kA, kB * phase0};
        want.inject_product(dq, out);
        c.expect(sv::fidelity(s, want) >= 1 - kTol, "P(theta0) applied exactly");
    }
    c.expect_near(total, 1.0, 1e-12, "first-attempt branch probabilities sum to 1");

    // Library rotations: success, and the doubling compensation after failures.
    const double theta = 2.0 * std::numbers::pi / 7.0;
    for (int fails = 0; fails <= 2; ++fails) {
        sv::PureState s(6);
        const std::array<int, 1> dq = {0};
        const std::array<cplx, 2> in = {kA, kB};
        s.inject_product(dq, in);
        Rng rng(static_cast<uint64_t>(61 + fails));
        DenseEngine eng(s, {}, &rng);
        std::vector<int> forced(static_cast<size_t>(fails), 1);
        forced.push_back(0);
        eng.force_outcomes(forced);
        gadgets::AngleLibrary lib{theta, {1, 2, 3, 4, 5}};
        const int attempts = gadgets::rotate_from_library(eng, 0, lib);
        c.expect(attempts == fails + 1, "library attempts");
        c.expect_near(eng.branch_probability(), std::pow(0.5, fails + 1), 1e-12,
                      "2^-n failure probability");
        for (int k = 0; k < attempts; ++k) {
            if (eng.measure(lib.qubits[static_cast<size_t>(k)]) == 1)
                eng.x(lib.qubits[static_cast<size_t>(k)]);
        }
        sv::PureState want(6);
        const std::array<cplx, 2> out = {kA, kB * std::polar(1.0, theta)};
        want.inject_product(dq, out);
        c.expect(sv::fidelity(s, want) >= 1 - kTol, "net rotation is P(theta)");
    }
    return c.result;
}

CheckResult check_leak_gadgets() {
    Checker c("leak detection and erasure recovery");

    // Non-leaked states: outcome 1, state untouched.
    Rng state_rng(0x1EAF);
    for (int k = 0; k < 22; ++k) {
        std::array<cplx, 2> in;
        if (k == 0) {
            in = {1.0, 0.0};
        } else if (k == 1) {
            in = {0.0, 1.0};
        } else {
            in = {cplx{state_rng.uniform() - 0.5, state_rng.uniform() - 0.5},
                  cplx{state_rng.uniform() - 0.5, state_rng.uniform() - 0.5}};
            const double norm = std::sqrt(std::norm(in[0]) + std::norm(in[1]));
            in[0] /= norm;
            in[1] /= norm;
        }
        const std::array<int, 1> dq = {0};
        sv::PureState ref(2);
        ref.inject_product(dq, in);
        sv::PureState s2 = ref;
        Rng rng(static_cast<uint64_t>(17 + k));
        DenseEngine eng(s2, {}, &rng);
        const int outcome = gadgets::leak_detect(eng, 0, 1);
        c.expect(outcome == 1, "clean qubit reads 1");
        eng.x(1);  // the ancilla ends in |1>; flip back before comparing
        c.expect(sv::fidelity(s2, ref) >= 1 - kTol, "clean state undisturbed");
    }

    // Leaked qubit: outcome 0.
    {
        sv::PureState s(2);
        s.set_leaked(0, true);
        Rng rng(3);
        DenseEngine eng(s, {}, &rng);
        c.expect(gadgets::leak_detect(eng, 0, 1) == 0, "leaked qubit reads 0");
    }

    // Erasure recovery across every position and logical state.
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const Workspace ws{anc};
    const std::array<std::pair<cplx, cplx>, 3> states = {{{1.0, 0.0}, {0.0, 1.0}, {kA, kB}}};
    for (size_t si = 0; si < states.size(); ++si) {
        for (int position = 0; position <= 7; ++position) {
            sv::PureState s = make_block_state(13, block, states[si].first, states[si].second);
            const sv::PureState ref = s;
            Rng rng(static_cast<uint64_t>(400 + si * 16 + static_cast<size_t>(position)));
            DenseEngine eng(s, {}, &rng);
            if (position > 0) eng.sim().set_leaked(block.at(position), true);
            gadgets::recover_erasure(eng, block, position, ws);
            clear_ancillas(eng, anc);
            c.expect(sv::fidelity(s, ref) >= 1 - kTol,
                     "erasure recovery at position " + std::to_string(position));
        }
    }
    return c.result;
}

CheckResult check_conformance() {
    Checker c("stabilizer tableau vs dense simulator (random Clifford circuits)");
    Rng gen(0xC0FFEE);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(gen.below(5));
        sv::PureState psi(n);
        stab::Tableau tab(n);

        // 20 gates with 3 interleaved measurements at random slots.
        std::array<int, 3> meas_slots{};
        for (auto& slot : meas_slots) slot = static_cast<int>(gen.below(20));

        for (int step = 0; step < 20; ++step) {
            const int kind = static_cast<int>(gen.below(7));
            const int q = static_cast<int>(gen.below(static_cast<uint64_t>(n)));
            int q2 = static_cast<int>(gen.below(static_cast<uint64_t>(n)));
            if (q2 == q) q2 = (q + 1) % n;
            switch (kind) {
                case 0: psi.apply(sv::Gate::h(q)); tab.h(q); break;
                case 1: psi.apply(sv::Gate::p(q)); tab.s(q); break;
                case 2: psi.apply(sv::Gate::p_dag(q)); tab.sdg(q); break;
                case 3: psi.apply(sv::Gate::x(q)); tab.x(q); break;
                case 4: psi.apply(sv::Gate::z(q)); tab.z(q); break;
                case 5: psi.apply(sv::Gate::cnot(q, q2)); tab.cnot(q, q2); break;
                default: psi.apply(sv::Gate::cz(q, q2)); tab.cz(q, q2); break;
            }
            for (int slot : meas_slots) {
                if (slot != step) continue;
                const int mq = static_cast<int>(gen.below(static_cast<uint64_t>(n)));
                const int desired = static_cast<int>(gen.next_u64() & 1);
                const double p1 = psi.prob_one(mq);
                const bool dense_det = p1 < 1e-9 || p1 > 1 - 1e-9;
                const auto res = tab.measure_z_forced(mq, desired);
                c.expect(dense_det == res.deterministic, "deterministic classification agrees");
                if (res.deterministic) {
                    const int dense_outcome = p1 > 0.5 ? 1 : 0;
                    c.expect(res.outcome == dense_outcome, "deterministic outcomes agree");
                    psi.measure_forced(mq, dense_outcome);
                } else {
                    psi.measure_forced(mq, desired);
                }
            }
            c.expect(tab.invariants_hold(), "tableau rank and commutation preserved");
        }

        // Every stabilizer generator has the right expectation in the dense state.
        for (int i = 0; i < n; ++i) {
            uint64_t xm = 0, zm = 0;
            int y_count = 0;
            for (int q = 0; q < n; ++q) {
                const bool xb = tab.stabilizer_x(i, q), zb = tab.stabilizer_z(i, q);
                if (xb) xm |= uint64_t{1} << (n - 1 - q);
                if (zb) zm |= uint64_t{1} << (n - 1 - q);
                if (xb && zb) ++y_count;
            }
            const cplx e = sv::pauli_expectation(psi, xm, zm);
            // Row operator = (-1)^sign * i^{#Y} * prod X^x Z^z.
            static const cplx kMinusITable[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
            const cplx want = (tab.stabilizer_sign(i) ? -1.0 : 1.0) * kMinusITable[y_count % 4];
            c.expect(std::abs(e - want) < 1e-9, "generator expectation matches");
        }
    }
    return c.result;
}

CheckResult check_analytic_layer() {
    Checker c("analytic layer: flow-table, concatenation, resources");
    namespace th = qeclab::threshold;

    c.expect_near(th::gate_failure_rate(8, 1.0), 684.0, 1e-9, "N=8 coefficient 684");
    c.expect_near(th::gate_failure_rate(9, 1.0), 685.0, 1e-9, "N=9 coefficient 685");
    c.expect_near(th::gate_failure_rate(1, 1.0), 1797.0, 1e-9, "N=1 coefficient 1797");
    const auto opt = th::optimize_n(1e-3);
    c.expect(opt.n == 8, "argmin at N=8");
    c.expect_near(opt.coefficient, 684.0, 1e-9, "optimal coefficient");
    double second_best = 1e18;
    for (int nn = 1; nn <= 100; ++nn)
        if (nn != 8) second_best = std::min(second_best, th::gate_failure_rate(nn, 1.0));
    c.expect(second_best > 684.0, "argmin unique");
    c.expect_near(th::threshold_estimate(), 1.0 / 684.0, 1e-15, "threshold 1/684");
    c.expect_near(th::gate_failure_rate(8, th::threshold_estimate()), th::threshold_estimate(),
                  1e-15, "threshold fixed point");
    c.expect_near(th::syndrome_error_rate(1e-3), 0.012, 1e-15, "12 eps");
    c.expect_near(th::recovery_failure_rate(1e-3), 1.44e-3, 1e-15, "1440 eps^2");

    c.expect_near(th::block_error_probability(1, 4.0, 1e-4), 1e-8, 1e-20, "(t^b eps)^{t+1} at t=1");
    c.expect_near(th::block_error_probability(2, 1.0, 1e-2), 8e-6, 1e-16, "t=2 case");
    c.expect_near(th::block_error_probability(3, 1.0, 0.0), 0.0, 0.0, "eps=0");
    c.expect_near(th::required_accuracy(std::exp(10.0), 1.0), 0.1, 1e-12, "(ln T)^-1");
    c.expect_near(th::required_accuracy(std::exp(10.0), 4.0), 1e-4, 1e-12, "(ln T)^-4");
    const auto topt = th::optimal_t_min_error(1.0, std::exp(-2.0));
    c.expect_near(topt.t_asymptotic, std::exp(1.0), 1e-12, "t ~ e^-1 eps^-1/b");
    c.expect(topt.t_argmin >= 1, "integer argmin reported");
    c.expect_near(th::optimal_t_min_error(4.0, 1e-4).min_error_asymptotic,
                  std::exp(-(4.0 / std::exp(1.0)) * 10.0), 1e-12, "asymptotic minimum");

    c.expect_near(th::concatenated_error(1e-6, 1e-4, 3), 1e-20, 1e-30, "recursion value at L=3");
    c.expect_near(th::concatenated_error(1e-4, 1e-4, 5), 1e-4, 1e-18, "fixed point at eps0");
    for (int level = 0; level < 5; ++level) {
        const double el = th::concatenated_error(3e-6, 1e-4, level);
        const double next = th::concatenated_error(3e-6, 1e-4, level + 1);
        c.expect_near(next, 1e-4 * std::pow(el / 1e-4, 2.0), 1e-9 * next, "recursion step");
    }
    c.expect(th::required_levels(1e-6, 1e-5, 1e-12) == 3, "storage target needs 3 levels");

    c.expect(std::isinf(th::required_block_size(1e10, 1e-4, 1e-4)), "diverges at eps0");
    {
        const double base = std::log(1e-4 * 1e10) / std::log(1e-4 / 1e-6);
        c.expect_near(th::required_block_size(1e10, 1e-6, 1e-4), std::pow(base, std::log2(7.0)),
                      1e-9, "log2(7) exponent");
        c.expect_near(th::required_block_size(1e10, 1e-6, 1e-4, 4, 1), std::pow(base, 2.0), 1e-9,
                      "exponent 2 for the n=4 family");
    }

    const auto res = th::factoring_resources(430);
    c.expect_near(res.toffoli_count, 3.021266e9, 1.0, "38 K^3 Toffoli gates");
    c.expect_near(res.encoded_qubits, 2150.0, 1e-9, "5K encoded qubits");
    c.expect(res.levels == 3, "3 levels of concatenation");
    c.expect_near(res.block_size, 343.0, 1e-9, "block size 7^3");
    c.expect(res.physical_qubits_order == 6, "total machine of order 10^6 qubits");

    // Repetition protocol oracle: exact coefficient under the documented model,
    // held against a direct Monte Carlo of the protocol.
    const auto oracle = th::repetition_failure_oracle();
    c.expect_near(oracle.q2_coefficient, 4.0, 0.0, "agree-twice model q^2 coefficient");
    c.expect_near(oracle.quoted_coefficient, 5.0, 0.0, "quoted coefficient reported alongside");
    {
        const double q = 0.01;
        Rng rng(424242);
        const long trials = 2000000;
        long fails = 0;
        for (long t = 0; t < trials; ++t) {
            int faults = 0, prev = -1, fresh = 1;
            for (int round = 0;; ++round) {
                const bool faulty = rng.bernoulli(q);
                const int value = faulty ? fresh++ : 0;
                if (faulty) ++faults;
                if (round > 0 && value == prev) break;
                prev = value;
                if (round > 100) break;
            }
            if (faults >= 2) ++fails;
        }
        const double want = oracle.failure_probability(q);
        const double sigma = std::sqrt(want / static_cast<double>(trials));
        c.expect(std::abs(static_cast<double>(fails) / static_cast<double>(trials) - want) <
                     4 * sigma,
                 "oracle matches direct protocol simulation");
    }
    {
        const double p1 = th::repetition_failure_oracle().failure_probability(5e-4);
        const double p2 = th::repetition_failure_oracle().failure_probability(1e-3);
        c.expect(std::abs(p2 / p1 - 4.0) < 0.05 * 4.0, "doubling q quadruples the failure rate");
    }
    return c.result;
}

namespace {

// Shared sweep machinery: record a scenario, then replay it once per
// (location, fault pattern) case and check the outcome predicate.
long run_sweep(Checker& c, int jobs, const std::function<void(DenseEngine&)>& scenario,
               const std::function<bool(long, const ArmedFault&)>& case_ok) {
    sv::PureState s(13);
    Rng rng(0x5EED);
    DenseEngine eng(s, {}, &rng);
    eng.set_recording(true);
    scenario(eng);
    const auto cases = sweep_cases(eng.transcript());

    const long failed = experiments::count_failures(
        static_cast<long>(cases.size()), jobs, [&](long i) {
            const auto& sc = cases[static_cast<size_t>(i)];
            return !case_ok(i, ArmedFault{sc.location, sc.pattern});
        });
    c.result.passed += static_cast<long>(cases.size()) - failed;
    c.result.failed += failed;
    if (failed > 0) c.result.note += "faulted cases failed: " + std::to_string(failed);
    return static_cast<long>(cases.size());
}

}  // namespace

CheckResult check_shor_ancilla_fault_oracle(int jobs) {
    Checker c("fault sweep: Shor-state preparation and use");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const Workspace ws{anc};
    const std::array<int, 4> cat = {7, 8, 9, 10};
    const int verifier = 11;

    for (int row = 1; row <= 3; ++row) {
        for (const bool phase_type : {false, true}) {
            const auto scenario = [&](DenseEngine& e) {
                steane::inject_logical(e.sim(), block, kA, kB);
                steane::measure_check_shor(e, block, row, phase_type, cat, verifier);
            };
            run_sweep(c, jobs, scenario, [&](long case_idx, const ArmedFault& fault) {
                sv::PureState st(13);
                steane::inject_logical(st, block, kA, kB);
                const sv::PureState ref = st;
                Rng r(0x5EED);
                DenseEngine e(st, {}, &r);
                e.arm_fault(fault);
                try {
                    steane::measure_check_shor(e, block, row, phase_type, cat, verifier);
                    // Whatever single fault occurred, an ideal recovery must
                    // restore the data exactly: an accepted ancilla never
                    // carries damage worth more than one qubit.
                    steane::recovery_cycle(e, block, ws, steane::Method::Shor);
                } catch (const std::exception&) {
                    return false;
                }
                (void)case_idx;
                clear_ancillas(e, anc);
                return sv::fidelity(st, ref) >= 1 - kTol;
            });
        }
    }
    return c.result;
}

CheckResult check_fault_sweep_recovery(int jobs) {
    Checker c("fault sweep: one full recovery cycle");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const Workspace ws{anc};

    const auto scenario = [&](DenseEngine& e) {
        steane::inject_logical(e.sim(), block, kA, kB);
        steane::recovery_cycle(e, block, ws, steane::Method::Shor);
    };
    run_sweep(c, jobs, scenario, [&](long, const ArmedFault& fault) {
        sv::PureState st(13);
        steane::inject_logical(st, block, kA, kB);
        const sv::PureState ref = st;
        Rng r(0x5EED);
        DenseEngine e(st, {}, &r);
        e.arm_fault(fault);
        try {
            steane::recovery_cycle(e, block, ws, steane::Method::Shor);
            steane::recovery_cycle(e, block, ws, steane::Method::Shor);  // ideal follow-up
        } catch (const std::exception&) {
            return false;
        }
        clear_ancillas(e, anc);
        return sv::fidelity(st, ref) >= 1 - kTol;
    });
    return c.result;
}

CheckResult check_fault_sweep_prepare_zero(int jobs) {
    Checker c("fault sweep: fault-tolerant logical-zero preparation");
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11, 12};
    const Workspace ws{anc};
    const auto zero = [&] {
        sv::PureState s(13);
        steane::inject_logical(s, block, 1.0, 0.0);
        return s;
    }();

    const auto scenario = [&](DenseEngine& e) {
        steane::prepare_logical_zero_ft(e, block, ws);
    };
    run_sweep(c, jobs, scenario, [&](long, const ArmedFault& fault) {
        sv::PureState st(13);
        Rng r(0x5EED);
        DenseEngine e(st, {}, &r);
        e.arm_fault(fault);
        try {
            steane::prepare_logical_zero_ft(e, block, ws);
            steane::recovery_cycle(e, block, ws.from(1), steane::Method::Shor);  // ideal cleanup
        } catch (const std::exception&) {
            return false;
        }
        clear_ancillas(e, anc);
        return sv::fidelity(st, zero) >= 1 - kTol;
    });
    return c.result;
}

std::vector<CheckResult> run_all(bool include_sweeps, int jobs) {
    std::vector<CheckResult> results;
    results.push_back(check_hamming());
    results.push_back(check_matrix_forms());
    results.push_back(check_logical_states());
    results.push_back(check_rotated_basis());
    results.push_back(check_encoder_circuit());
    results.push_back(check_syndrome_lookup());
    results.push_back(check_shor_state());
    results.push_back(check_extraction_agreement());
    results.push_back(check_recovery_oracle());
    results.push_back(check_double_errors());
    results.push_back(check_measurement_protocols());
    results.push_back(check_ft_zero_prep());
    results.push_back(check_transversal_gates());
    results.push_back(check_transversality_structure());
    results.push_back(check_toffoli_branches());
    results.push_back(check_toffoli_skeleton_b7());
    results.push_back(check_rotation_gadgets());
    results.push_back(check_leak_gadgets());
    results.push_back(check_conformance());
    results.push_back(check_analytic_layer());
    if (include_sweeps) {
        results.push_back(check_shor_ancilla_fault_oracle(jobs));
        results.push_back(check_fault_sweep_recovery(jobs));
        results.push_back(check_fault_sweep_prepare_zero(jobs));
    }
    return results;
}

}  // namespace qeclab::verify
