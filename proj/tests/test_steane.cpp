#include <doctest.h>

#include <cmath>

#include "qeclab/engine.hpp"
#include "qeclab/steane.hpp"
#include "qeclab/verify.hpp"

using namespace qeclab;
using namespace qeclab::steane;
using sv::cplx;

namespace {
const double kInvSqrt8 = 1.0 / std::sqrt(8.0);
}

TEST_CASE("logical state amplitudes") {
    const auto zero = logical_zero();
    CHECK(std::abs(zero.amp(0b0000000) - kInvSqrt8) < 1e-12);
    CHECK(std::abs(zero.amp(0b1111111)) < 1e-12);
    const auto one = logical_one();
    CHECK(std::abs(one.amp(0b1111111) - kInvSqrt8) < 1e-12);
    CHECK(sv::fidelity(zero, one) < 1e-12);
    CHECK(verify::check_logical_states().failed == 0);
}

TEST_CASE("encoder circuit structure and action") {
    const auto c = encoder_circuit();
    REQUIRE(c.steps.size() == 14);
    // Two initial XORs, three Hadamards, nine fan-out XORs.
    CHECK(c.steps[0].gate.kind == sv::GateKind::CNOT);
    CHECK(c.steps[1].gate.kind == sv::GateKind::CNOT);
    for (int i = 2; i < 5; ++i) CHECK(c.steps[static_cast<size_t>(i)].gate.kind == sv::GateKind::Hadamard);
    for (int i = 5; i < 14; ++i) CHECK(c.steps[static_cast<size_t>(i)].gate.kind == sv::GateKind::CNOT);
    CHECK(verify::check_encoder_circuit().failed == 0);
}

TEST_CASE("encode_logical lands on the canonical code states") {
    for (int value = 0; value <= 1; ++value) {
        sv::PureState s(7);
        Rng rng(4);
        DenseEngine eng(s, {}, &rng);
        encode_logical(eng, CodeBlock::contiguous(0), value);
        CHECK(sv::fidelity(s, value ? logical_one() : logical_zero()) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("syndrome lookup") {
    CHECK(syndrome_lookup(stab::PauliError::identity(7)).trivial());
    {
        const auto s = syndrome_lookup(stab::PauliError::single(7, 2, 'X'));  // position 3
        CHECK(s.bit_flip.bit(1) == 0);
        CHECK(s.bit_flip.bit(2) == 1);
        CHECK(s.bit_flip.bit(3) == 1);
        CHECK(s.phase_flip.trivial());
    }
    {
        const auto s = syndrome_lookup(stab::PauliError::single(7, 6, 'Z'));  // position 7
        CHECK(s.bit_flip.trivial());
        CHECK(s.phase_flip.value() == 7);
    }
    stab::PauliError multi(7);
    multi.set(0, true, false);
    multi.set(3, true, false);
    CHECK_THROWS_AS(syndrome_lookup(multi), std::invalid_argument);
}

TEST_CASE("syndrome extraction examples") {
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11, 12, 13};
    const Workspace ws{anc};
    const auto extract_with_error = [&](int position, char kind, Method method) {
        sv::PureState s(14);
        inject_logical(s, block, cplx{0.6, 0.0}, cplx{0.0, 0.8});
        Rng rng(static_cast<uint64_t>(position * 4 + kind));
        DenseEngine eng(s, {}, &rng);
        if (position > 0) {
            const int q = block.at(position);
            if (kind == 'X') eng.x(q);
            if (kind == 'Y') eng.y(q);
            if (kind == 'Z') eng.z(q);
        }
        return method == Method::Shor ? extract_syndrome_shor(eng, block, ws)
                                      : extract_syndrome_steane(eng, block, ws);
    };

    for (const auto method : {Method::Shor, Method::Steane}) {
        CHECK(extract_with_error(0, 'X', method).trivial());
        const auto x5 = extract_with_error(5, 'X', method);
        CHECK(x5.bit_flip.value() == 5);
        CHECK(x5.phase_flip.trivial());
        const auto y2 = extract_with_error(2, 'Y', method);
        CHECK(y2.bit_flip.value() == 2);
        CHECK(y2.phase_flip.value() == 2);
        const auto z4 = extract_with_error(4, 'Z', method);
        CHECK(z4.bit_flip.trivial());
        CHECK(z4.phase_flip.value() == 4);
    }
}

TEST_CASE("repeat-until-agree protocol") {
    const auto syndrome = [](int bit, int phase) {
        return Syndrome{hamming::ClassicalSyndrome(bit), hamming::ClassicalSyndrome(phase)};
    };
    SUBCASE("constant extractor settles in two rounds") {
        int rounds = 0;
        const auto s = repeat_until_agree([&] { return syndrome(3, 0); }, 8, &rounds);
        CHECK(rounds == 2);
        CHECK(s.bit_flip.value() == 3);
    }
    SUBCASE("A,B,B returns B after three rounds") {
        const std::array<Syndrome, 3> script = {syndrome(1, 0), syndrome(2, 0), syndrome(2, 0)};
        size_t i = 0;
        int rounds = 0;
        const auto s = repeat_until_agree([&] { return script[i++]; }, 8, &rounds);
        CHECK(rounds == 3);
        CHECK(s == script[1]);
    }
    SUBCASE("A,B,A,A returns A after four rounds") {
        const std::array<Syndrome, 4> script = {syndrome(1, 0), syndrome(2, 0), syndrome(1, 0),
                                                syndrome(1, 0)};
        size_t i = 0;
        int rounds = 0;
        const auto s = repeat_until_agree([&] { return script[i++]; }, 8, &rounds);
        CHECK(rounds == 4);
        CHECK(s == script[0]);
    }
    SUBCASE("budget exhaustion") {
        int v = 0;
        const auto alternating = [&] { return syndrome((v++ % 2) ? 1 : 2, 0); };
        CHECK_THROWS_AS(repeat_until_agree(alternating, 8), std::runtime_error);
        CHECK_THROWS_AS(repeat_until_agree([&] { return syndrome(0, 0); }, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("recovery restores single errors and reports the correction") {
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const Workspace ws{anc};

    SUBCASE("trivial syndrome applies nothing") {
        sv::PureState s(13);
        inject_logical(s, block, 1.0, 0.0);
        const sv::PureState ref = s;
        Rng rng(1);
        DenseEngine eng(s, {}, &rng);
        const auto op = recover(eng, block, Syndrome{});
        CHECK(op.x_position == 0);
        CHECK(op.z_position == 0);
        CHECK(sv::fidelity(s, ref) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("full cycle corrects X at position 3") {
        sv::PureState s(13);
        inject_logical(s, block, cplx{0.6, 0.0}, cplx{0.0, 0.8});
        const sv::PureState ref = s;
        Rng rng(2);
        DenseEngine eng(s, {}, &rng);
        eng.x(block.at(3));
        const auto op = recovery_cycle(eng, block, ws, Method::Shor);
        CHECK(op.x_position == 3);
        CHECK(op.z_position == 0);
        for (int q : anc)
            if (eng.measure(q) == 1) eng.x(q);
        CHECK(sv::fidelity(s, ref) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("exhaustive 21-case oracle under both methods") {
        CHECK(verify::check_recovery_oracle().failed == 0);
    }
    SUBCASE("double errors land on the logically flipped states") {
        CHECK(verify::check_double_errors().failed == 0);
    }
}

TEST_CASE("shor ancilla construction") {
    CHECK(verify::check_shor_state().failed == 0);
}

TEST_CASE("destructive logical measurement") {
    const auto block = CodeBlock::contiguous(0);
    Rng rng(6);
    {
        sv::PureState s = logical_zero();
        DenseEngine eng(s, {}, &rng);
        CHECK(measure_logical_destructive(eng, block) == 0);
    }
    {
        sv::PureState s = logical_one();
        DenseEngine eng(s, {}, &rng);
        eng.x(block.at(4));  // one readout-equivalent bit flip
        CHECK(measure_logical_destructive(eng, block) == 1);
    }
    // Born statistics on an equal logical superposition.
    long ones = 0;
    const long trials = 100000;
    const double r = 1.0 / std::sqrt(2.0);
    for (long t = 0; t < trials; ++t) {
        sv::PureState s = logical_state(r, r);
        DenseEngine eng(s, {}, &rng);
        ones += measure_logical_destructive(eng, block);
    }
    CHECK(std::abs(static_cast<double>(ones) / trials - 0.5) < 4.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("nondestructive logical measurement") {
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7};
    const Workspace ws{anc};
    Rng rng(8);

    for (int value = 0; value <= 1; ++value) {
        sv::PureState s(8);
        inject_logical(s, block, value ? cplx{0} : cplx{1}, value ? cplx{1} : cplx{0});
        DenseEngine eng(s, {}, &rng);
        CHECK(measure_logical_nondestructive(eng, block, ws, false) == value);
        sv::PureState want(8);
        inject_logical(want, block, value ? cplx{0} : cplx{1}, value ? cplx{1} : cplx{0});
        if (eng.measure(7) == 1) eng.x(7);
        CHECK(sv::fidelity(s, want) == doctest::Approx(1.0).epsilon(1e-10));
    }

    // Born frequency at |a|^2 = 5/8, and the post-state is the projected basis state.
    long zeros = 0;
    const long trials = 100000;
    for (long t = 0; t < trials; ++t) {
        sv::PureState s(8);
        inject_logical(s, block, std::sqrt(5.0 / 8.0), std::sqrt(3.0 / 8.0));
        DenseEngine eng(s, {}, &rng);
        const int m = measure_logical_nondestructive(eng, block, ws, false);
        if (m == 0) ++zeros;
        if (t < 20) {
            sv::PureState want(8);
            inject_logical(want, block, m ? cplx{0} : cplx{1}, m ? cplx{1} : cplx{0});
            if (eng.measure(7) == 1) eng.x(7);
            CHECK(sv::fidelity(s, want) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    const double p = 5.0 / 8.0;
    CHECK(std::abs(static_cast<double>(zeros) / trials - p) <
          4.0 * std::sqrt(p * (1 - p) / trials));
}

TEST_CASE("fault-tolerant logical zero preparation") {
    CHECK(verify::check_ft_zero_prep().failed == 0);
}

TEST_CASE("the frozen logical parity triple") {
    CHECK(find_logical_parity_triple() == kLogicalParityTriple);
    for (const auto& v : hamming::codewords().all) {
        int parity = 0;
        for (int p : kLogicalParityTriple) parity ^= v.bit(p);
        CHECK(parity == (v.weight() & 1));
    }
}

TEST_CASE("tableau backend: extraction and recovery of all 21 single Paulis") {
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    const Workspace ws{anc};
    for (int value = 0; value <= 1; ++value) {
        for (int p = 1; p <= 7; ++p) {
            for (char kind : {'X', 'Y', 'Z'}) {
                stab::Tableau sim(12);
                Rng rng(static_cast<uint64_t>(900 + value * 64 + p * 8 + kind));
                TableauEngine eng(sim, {}, &rng);
                encode_logical(eng, block, value);
                sim.inject(stab::PauliError::single(12, p - 1, kind));

                const auto expected = syndrome_lookup(stab::PauliError::single(7, p - 1, kind));
                const auto got = extract_syndrome_shor(eng, block, ws);
                CHECK(got == expected);

                const auto op = recovery_cycle(eng, block, ws, Method::Shor);
                CHECK(op.x_position == expected.bit_flip.value());
                CHECK(op.z_position == expected.phase_flip.value());
                CHECK(measure_logical_destructive(eng, block) == value);
            }
        }
    }
}

TEST_CASE("workspace guards") {
    const auto block = CodeBlock::contiguous(0);
    const std::vector<int> tiny = {7, 8};
    sv::PureState s(13);
    Rng rng(1);
    DenseEngine eng(s, {}, &rng);
    CHECK_THROWS_AS(extract_syndrome_shor(eng, block, Workspace{tiny}), std::invalid_argument);
}
