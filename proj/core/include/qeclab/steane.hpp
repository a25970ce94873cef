#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>

#include "qeclab/engine.hpp"
#include "qeclab/hamming.hpp"

namespace qeclab::steane {

/// Seven physical qubits holding one encoded qubit. Position p in 1..7
/// corresponds to column p of the canonical check matrix.
struct CodeBlock {
    std::array<int, 7> qubits;

    int at(int position) const { return qubits[static_cast<size_t>(position - 1)]; }

    static CodeBlock contiguous(int first) {
        CodeBlock b{};
        for (int i = 0; i < 7; ++i) b.qubits[static_cast<size_t>(i)] = first + i;
        return b;
    }

    bool overlaps(const CodeBlock& other) const {
        for (int a : qubits)
            for (int b : other.qubits)
                if (a == b) return true;
        return false;
    }
};

/// Six syndrome bits for one block: a Hamming check in the computational
/// basis (diagnosing bit flips) and one in the rotated basis (phase flips).
struct Syndrome {
    hamming::ClassicalSyndrome bit_flip;
    hamming::ClassicalSyndrome phase_flip;

    bool trivial() const { return bit_flip.trivial() && phase_flip.trivial(); }
    friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// The correction dictated by a syndrome: an X at the bit-flip position and a
/// Z at the phase-flip position (0 = none). Both are applied independently.
struct RecoveryOp {
    int x_position = 0;
    int z_position = 0;
};

enum class Method { Shor, Steane };

/// Positions whose joint parity equals the codeword parity on all 16
/// codewords: a weight-3 logical-Z representative. Found by search (see
/// find_logical_parity_triple) and frozen here; the nondestructive logical
/// measurement XORs exactly these positions into its ancilla. The same
/// positions support the weight-3 logical NOT, since their indicator vector
/// is an odd codeword.
inline constexpr std::array<int, 3> kLogicalParityTriple = {1, 2, 3};

/// Exhaustive search behind kLogicalParityTriple.
std::array<int, 3> find_logical_parity_triple();

// ---------------------------------------------------------------------------
// Logical states and the encoder (dense representations)
// ---------------------------------------------------------------------------

sv::PureState logical_zero();
sv::PureState logical_one();
sv::PureState logical_state(sv::cplx a, sv::cplx b);

/// Installs a |0...0> block of a larger dense state as a*|0>_code + b*|1>_code.
void inject_logical(sv::PureState& state, const CodeBlock& block, sv::cplx a, sv::cplx b);

/// The encoding circuit: two XORs copy the input onto the parity triple, three
/// Hadamards open the superposition, and the XOR fan-out switches on the
/// parity bits row by row. Wires are labeled by the encoder-form check matrix;
/// wire 1 (qubit index 0) carries the input a|0> + b|1>.
sv::Circuit encoder_circuit();

/// Wire k of encoder_circuit() holds canonical position kEncoderWireToCanonical[k-1].
inline constexpr std::array<int, 7> kEncoderWireToCanonical = {6, 5, 3, 7, 1, 2, 4};

/// Runs the encoder through an engine on a block in canonical labeling.
/// Prepares |value>_code from fresh qubits.
template <class B>
void encode_logical(Engine<B>& eng, const CodeBlock& block, int value);

// ---------------------------------------------------------------------------
// Syndromes
// ---------------------------------------------------------------------------

/// Syndrome of a single-position Pauli error (qubit q of the error maps to
/// position q+1). Throws on multi-position support.
Syndrome syndrome_lookup(const stab::PauliError& error);

/// Ancilla workspace handed to the protocols below. Requirements:
///   Shor extraction            5 qubits (4-qubit cat + verifier)
///   Steane extraction          7 (+6 more when ft_ancilla)
///   nondestructive measurement 1 + extraction workspace
///   fault-tolerant |0> prep    1 + 5
struct Workspace {
    std::span<const int> anc;

    int at(size_t i) const {
        if (i >= anc.size()) throw std::invalid_argument("Workspace: too few ancilla qubits");
        return anc[i];
    }
    Workspace from(size_t offset) const {
        if (offset > anc.size()) throw std::invalid_argument("Workspace: too few ancilla qubits");
        return Workspace{anc.subspan(offset)};
    }
};

/// Builds the 4-qubit cat state and verifies it per the construction-and-check
/// circuit: a Hadamard plus XOR cascade, then the two cascade ends are XORed
/// into a fifth qubit whose measurement must read 0; on 1 the state is
/// discarded and rebuilt. The whole routine is ancilla work (quiet scope).
template <class B>
void prepare_verified_cat4(Engine<B>& eng, std::span<const int> cat, int verifier,
                           int max_attempts = 32);

/// One syndrome bit by the Shor method. Bit-flip checks rotate the verified
/// cat into the Shor state and use the four data positions of the row as XOR
/// sources; phase-flip checks reverse the XOR direction (cat as source), which
/// avoids rotating the data. The bit is the parity of the four ancilla
/// readouts. No ancilla qubit couples to more than one data qubit.
template <class B>
int measure_check_shor(Engine<B>& eng, const CodeBlock& block, int row, bool phase_type,
                       std::span<const int> cat, int verifier);

template <class B>
Syndrome extract_syndrome_shor(Engine<B>& eng, const CodeBlock& block, Workspace ws);

/// Both Hamming checks by the Steane method: a 7-qubit ancilla block receives
/// a transversal XOR image of the data (bit-flip side) or sources a
/// transversal XOR into the data and is read in the rotated basis (phase
/// side); the classical Hamming check of the 7 readouts is the syndrome.
/// With ft_ancilla the ancilla blocks are produced by the fault-tolerant
/// logical-zero preparation; otherwise they are encoded as ancilla work.
template <class B>
Syndrome extract_syndrome_steane(Engine<B>& eng, const CodeBlock& block, Workspace ws,
                                 bool ft_ancilla = false);

/// Measures until the same syndrome appears twice in a row. Returns that
/// syndrome and stores the number of rounds used.
Syndrome repeat_until_agree(const std::function<Syndrome()>& extract, int max_rounds,
                            int* rounds_used = nullptr);

template <class B>
RecoveryOp recover(Engine<B>& eng, const CodeBlock& block, const Syndrome& s);

/// Full fault-tolerant recovery: repeat-until-agree syndrome measurement
/// followed by the dictated corrections.
template <class B>
RecoveryOp recovery_cycle(Engine<B>& eng, const CodeBlock& block, Workspace ws, Method method,
                          int max_rounds = 8, bool ft_ancilla = false);

/// Measures all seven qubits, classically corrects the readout word, and
/// returns its parity. Tolerates any single readout error; destroys the block.
template <class B>
int measure_logical_destructive(Engine<B>& eng, const CodeBlock& block);

/// Copies the block parity (the frozen weight-3 triple) onto an ancilla and
/// measures it, repeating -- with error correction in between when requested --
/// until two consecutive outcomes agree. The block stays in the code space,
/// projected onto the measured logical value.
template <class B>
int measure_logical_nondestructive(Engine<B>& eng, const CodeBlock& block, Workspace ws,
                                   bool ec_between, Method method = Method::Shor,
                                   int max_rounds = 8);

/// Encoding-free preparation of |0>_code: fault-tolerant recovery projects the
/// raw block onto the code space, a verified logical measurement picks a basis
/// state, and a bitwise NOT flips |1>_code to |0>_code when needed.
template <class B>
void prepare_logical_zero_ft(Engine<B>& eng, const CodeBlock& block, Workspace ws,
                             Method method = Method::Shor);

// ---------------------------------------------------------------------------
// Template definitions
// ---------------------------------------------------------------------------

template <class B>
void encode_logical(Engine<B>& eng, const CodeBlock& block, int value) {
    const auto wire = [&block](int k) { return block.at(kEncoderWireToCanonical[static_cast<size_t>(k - 1)]); };
    for (int p = 1; p <= 7; ++p) eng.prep_zero(block.at(p));
    if (value) eng.x(wire(1));
    eng.cnot(wire(1), wire(2));
    eng.cnot(wire(1), wire(3));
    eng.h(wire(7));
    eng.h(wire(6));
    eng.h(wire(5));
    eng.cnot(wire(7), wire(1));
    eng.cnot(wire(7), wire(2));
    eng.cnot(wire(7), wire(4));
    eng.cnot(wire(6), wire(1));
    eng.cnot(wire(6), wire(3));
    eng.cnot(wire(6), wire(4));
    eng.cnot(wire(5), wire(2));
    eng.cnot(wire(5), wire(3));
    eng.cnot(wire(5), wire(4));
}

template <class B>
void prepare_verified_cat4(Engine<B>& eng, std::span<const int> cat, int verifier,
                           int max_attempts) {
    if (cat.size() != 4) throw std::invalid_argument("prepare_verified_cat4: need 4 cat qubits");
    typename Engine<B>::QuietScope quiet(eng);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (int q : cat) eng.prep_zero(q);
        eng.prep_zero(verifier);
        eng.h(cat[0]);
        eng.cnot(cat[0], cat[1]);
        eng.cnot(cat[1], cat[2]);
        eng.cnot(cat[2], cat[3]);
        eng.cnot(cat[0], verifier);
        eng.cnot(cat[3], verifier);
        if (eng.measure(verifier) == 0) return;
    }
    throw std::runtime_error("prepare_verified_cat4: verification retry budget exhausted");
}

template <class B>
int measure_check_shor(Engine<B>& eng, const CodeBlock& block, int row, bool phase_type,
                       std::span<const int> cat, int verifier) {
    prepare_verified_cat4(eng, cat, verifier);
    const auto support = hamming::CheckMatrix::canonical().row_support(row);
    if (!phase_type) {
        {
            typename Engine<B>::QuietScope quiet(eng);
            for (int q : cat) eng.h(q);  // cat -> Shor state
        }
        for (size_t i = 0; i < 4; ++i) eng.cnot(block.at(support[i]), cat[i]);
    } else {
        for (size_t i = 0; i < 4; ++i) eng.cnot(cat[i], block.at(support[i]));
        for (int q : cat) eng.h(q);
    }
    int parity = 0;
    for (int q : cat) parity ^= eng.measure(q);
    return parity;
}

template <class B>
Syndrome extract_syndrome_shor(Engine<B>& eng, const CodeBlock& block, Workspace ws) {
    const std::array<int, 4> cat = {ws.at(0), ws.at(1), ws.at(2), ws.at(3)};
    const int verifier = ws.at(4);
    int bit = 0, phase = 0;
    for (int row = 1; row <= 3; ++row)
        bit = (bit << 1) | measure_check_shor(eng, block, row, false, cat, verifier);
    for (int row = 1; row <= 3; ++row)
        phase = (phase << 1) | measure_check_shor(eng, block, row, true, cat, verifier);
    return {hamming::ClassicalSyndrome(bit), hamming::ClassicalSyndrome(phase)};
}

template <class B>
Syndrome extract_syndrome_steane(Engine<B>& eng, const CodeBlock& block, Workspace ws,
                                 bool ft_ancilla) {
    CodeBlock anc{};
    for (int i = 0; i < 7; ++i) anc.qubits[static_cast<size_t>(i)] = ws.at(static_cast<size_t>(i));

    const auto prepare_zero_code = [&] {
        if (ft_ancilla) {
            prepare_logical_zero_ft(eng, anc, ws.from(7), Method::Shor);
        } else {
            typename Engine<B>::QuietScope quiet(eng);
            encode_logical(eng, anc, 0);
        }
    };
    const auto read_word = [&] {
        uint8_t packed = 0;
        for (int p = 1; p <= 7; ++p)
            packed = static_cast<uint8_t>((packed << 1) | eng.measure(anc.at(p)));
        return hamming::Word7(packed);
    };

    // Bit-flip side: ancilla in the Steane state (bitwise Hadamard of |0>_code),
    // data XORed in transversally.
    prepare_zero_code();
    {
        typename Engine<B>::QuietScope quiet(eng);
        for (int p = 1; p <= 7; ++p) eng.h(anc.at(p));
    }
    for (int p = 1; p <= 7; ++p) eng.cnot(block.at(p), anc.at(p));
    const auto bit = hamming::parity_check(read_word());

    // Phase-flip side: ancilla |0>_code as XOR source, read in the rotated basis.
    prepare_zero_code();
    for (int p = 1; p <= 7; ++p) eng.cnot(anc.at(p), block.at(p));
    for (int p = 1; p <= 7; ++p) eng.h(anc.at(p));
    const auto phase = hamming::parity_check(read_word());

    return {bit, phase};
}

inline Syndrome repeat_until_agree(const std::function<Syndrome()>& extract, int max_rounds,
                                   int* rounds_used) {
    if (max_rounds < 2) throw std::invalid_argument("repeat_until_agree: need at least 2 rounds");
    Syndrome prev = extract();
    for (int round = 2; round <= max_rounds; ++round) {
        const Syndrome cur = extract();
        if (cur == prev) {
            if (rounds_used) *rounds_used = round;
            return cur;
        }
        prev = cur;
    }
    throw std::runtime_error("repeat_until_agree: no two consecutive syndromes agreed");
}

template <class B>
RecoveryOp recover(Engine<B>& eng, const CodeBlock& block, const Syndrome& s) {
    RecoveryOp op{s.bit_flip.value(), s.phase_flip.value()};
    if (op.x_position) eng.x(block.at(op.x_position));
    if (op.z_position) eng.z(block.at(op.z_position));
    return op;
}

template <class B>
RecoveryOp recovery_cycle(Engine<B>& eng, const CodeBlock& block, Workspace ws, Method method,
                          int max_rounds, bool ft_ancilla) {
    const auto extract = [&]() {
        return method == Method::Shor ? extract_syndrome_shor(eng, block, ws)
                                      : extract_syndrome_steane(eng, block, ws, ft_ancilla);
    };
    const Syndrome s = repeat_until_agree(extract, max_rounds);
    return recover(eng, block, s);
}

template <class B>
int measure_logical_destructive(Engine<B>& eng, const CodeBlock& block) {
    uint8_t packed = 0;
    for (int p = 1; p <= 7; ++p) packed = static_cast<uint8_t>((packed << 1) | eng.measure(block.at(p)));
    const auto decoded = hamming::decode_single(hamming::Word7(packed));
    return decoded.corrected.weight() & 1;
}

template <class B>
int measure_logical_nondestructive(Engine<B>& eng, const CodeBlock& block, Workspace ws,
                                   bool ec_between, Method method, int max_rounds) {
    const int anc = ws.at(0);
    int prev = -1;
    for (int round = 1; round <= max_rounds; ++round) {
        eng.prep_zero(anc);
        for (int p : kLogicalParityTriple) eng.cnot(block.at(p), anc);
        const int m = eng.measure(anc);
        if (m == prev) return m;
        prev = m;
        if (ec_between && round < max_rounds) recovery_cycle(eng, block, ws.from(1), method);
    }
    throw std::runtime_error("measure_logical_nondestructive: agreement budget exhausted");
}

template <class B>
void prepare_logical_zero_ft(Engine<B>& eng, const CodeBlock& block, Workspace ws, Method method) {
    for (int p = 1; p <= 7; ++p) eng.prep_zero(block.at(p));
    recovery_cycle(eng, block, ws.from(1), method);
    const int m = measure_logical_nondestructive(eng, block, ws, /*ec_between=*/true, method);
    if (m == 1) {
        for (int p = 1; p <= 7; ++p) eng.x(block.at(p));  // bitwise NOT
    }
}

}  // namespace qeclab::steane
