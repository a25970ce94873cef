#include "qeclab/gadgets.hpp"

#include <stdexcept>

namespace qeclab::gadgets {

namespace {

/// One cat-mediated measurement of (ab xor z) at block size 1: controlled-Z
/// from the third block, a Hadamard, and the bitwise Toffoli into the cat,
/// then the cat is read out.
int and_parity_measurement(DenseEngine& eng, const std::array<int, 3>& anc, int cat) {
    eng.prep_zero(cat);
    eng.h(cat);
    eng.cz(anc[2], cat);
    eng.h(cat);
    eng.toffoli(anc[0], anc[1], cat);
    return eng.measure(cat);
}

}  // namespace

int prepare_toffoli_ancilla(DenseEngine& eng, const std::array<int, 3>& anc, int cat,
                            int max_rounds) {
    for (int q : anc) {
        eng.prep_zero(q);
        eng.h(q);
    }
    // Repeat the measurement until two consecutive readouts agree.
    int prev = -1;
    for (int round = 1; round <= max_rounds; ++round) {
        const int m = and_parity_measurement(eng, anc, cat);
        if (m == prev) {
            if (m == 1) eng.x(anc[2]);
            return round;
        }
        prev = m;
    }
    throw std::runtime_error("prepare_toffoli_ancilla: agreement budget exhausted");
}

ToffoliOutcome logical_toffoli(DenseEngine& eng, const std::array<int, 3>& anc,
                               const std::array<int, 3>& data, int cat, int max_rounds) {
    ToffoliOutcome out{};
    out.and_measure_rounds = prepare_toffoli_ancilla(eng, anc, cat, max_rounds);

    eng.cnot(anc[0], data[0]);
    eng.cnot(anc[1], data[1]);
    eng.cnot(data[2], anc[2]);
    eng.h(data[2]);
    out.w = eng.measure(data[2]);
    out.m2 = eng.measure(data[1]);
    out.m1 = eng.measure(data[0]);

    if (out.w) {
        eng.cz(anc[0], anc[1]);
        eng.z(anc[2]);
    }
    if (out.m2) {
        eng.x(anc[1]);
        eng.cnot(anc[0], anc[2]);
    }
    if (out.m1) {
        eng.x(anc[0]);
        eng.cnot(anc[1], anc[2]);
    }
    return out;
}

ToffoliOutcome toffoli_skeleton_b7(TableauEngine& eng, const std::array<steane::CodeBlock, 3>& anc,
                                   const std::array<steane::CodeBlock, 3>& data) {
    ToffoliOutcome out{};
    logical_xor(eng, anc[0], data[0]);
    logical_xor(eng, anc[1], data[1]);
    logical_xor(eng, data[2], anc[2]);
    logical_hadamard(eng, data[2]);
    out.w = steane::measure_logical_destructive(eng, data[2]);
    out.m2 = steane::measure_logical_destructive(eng, data[1]);
    out.m1 = steane::measure_logical_destructive(eng, data[0]);

    if (out.w) {
        logical_cz(eng, anc[0], anc[1]);
        logical_z(eng, anc[2]);
    }
    if (out.m2) {
        logical_not(eng, anc[1]);
        logical_xor(eng, anc[0], anc[2]);
    }
    if (out.m1) {
        logical_not(eng, anc[0]);
        logical_xor(eng, anc[1], anc[2]);
    }
    return out;
}

int rotate_theta0(DenseEngine& eng, int data, const std::array<int, 2>& anc, int max_attempts) {
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        eng.prep_zero(anc[0]);
        eng.prep_zero(anc[1]);
        eng.h(anc[0]);
        eng.h(anc[1]);
        eng.toffoli(anc[0], anc[1], data);
        eng.p(data);
        eng.toffoli(anc[0], anc[1], data);
        eng.h(anc[0]);
        eng.h(anc[1]);
        const int m0 = eng.measure(anc[0]);
        const int m1 = eng.measure(anc[1]);
        if (m0 == 0 && m1 == 0) return attempt;
        eng.z(data);  // every failure branch is a Z, up to global phase
    }
    throw std::runtime_error("rotate_theta0: retry budget exhausted");
}

int rotate_from_library(DenseEngine& eng, int data, const AngleLibrary& library) {
    for (size_t k = 0; k < library.size(); ++k) {
        // Attempt k withdraws the 2^k theta entry, which exactly compensates
        // the accumulated P(-(2^k - 1) theta) of the failures before it.
        const auto entry = library.entry(k);
        eng.prep_zero(entry.qubit);
        eng.h(entry.qubit);
        eng.phase_theta(entry.qubit, entry.theta);
        eng.cnot(data, entry.qubit);
        if (eng.measure(entry.qubit) == 0) return static_cast<int>(k) + 1;
    }
    throw std::runtime_error("rotate_from_library: angle library exhausted");
}

std::vector<std::string> toffoli_fixups(const ToffoliOutcome& out) {
    std::vector<std::string> fixups;
    if (out.w) fixups.insert(fixups.end(), {"CZ(anc1,anc2)", "Z(anc3)"});
    if (out.m2) fixups.insert(fixups.end(), {"X(anc2)", "XOR(anc1->anc3)"});
    if (out.m1) fixups.insert(fixups.end(), {"X(anc1)", "XOR(anc2->anc3)"});
    return fixups;
}

}  // namespace qeclab::gadgets
