#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qeclab/statevec.hpp"

using namespace qeclab;
using namespace qeclab::sv;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

PureState random_state(int n, Rng& rng) {
    PureState s(n);
    std::vector<cplx> amps(s.dim());
    double norm = 0;
    for (auto& a : amps) {
        a = cplx{rng.uniform() - 0.5, rng.uniform() - 0.5};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    s.inject_product(all, amps);
    return s;
}

}  // namespace

TEST_CASE("zero state and the qubit cap") {
    PureState one(1);
    CHECK(one.amp(0) == cplx{1, 0});
    PureState three(3);
    CHECK(three.amp(0) == cplx{1, 0});
    for (uint64_t i = 1; i < 8; ++i) CHECK(three.amp(i) == cplx{0, 0});
    CHECK_THROWS_WITH_AS(PureState(25), "PureState: qubit cap exceeded", std::invalid_argument);
    CHECK_THROWS_AS(PureState(0), std::invalid_argument);
}

TEST_CASE("basic gate actions") {
    PureState s(1);
    s.apply(Gate::h(0));
    CHECK(std::abs(s.amp(0) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(s.amp(1) - kInvSqrt2) < 1e-12);

    PureState t(2);
    t.apply(Gate::x(0));  // |10>
    t.apply(Gate::cnot(0, 1));
    CHECK(std::abs(t.amp(0b11) - 1.0) < 1e-12);
}

TEST_CASE("P(theta0) on the plus state") {
    // e^{i theta0} = (1+3i)/(3+i) rationalizes to (3+4i)/5.
    const double theta0 = std::atan2(4.0, 3.0);
    PureState s(1);
    s.apply(Gate::h(0));
    s.apply(Gate::p_theta(0, theta0));
    CHECK(std::abs(s.amp(0) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(s.amp(1) - cplx{3.0, 4.0} / 5.0 * kInvSqrt2) < 1e-12);
    CHECK(std::abs(std::cos(theta0) - 0.6) < 1e-15);
}

TEST_CASE("Toffoli truth table") {
    for (uint64_t in = 0; in < 8; ++in) {
        PureState s(3);
        for (int q = 0; q < 3; ++q)
            if ((in >> (2 - q)) & 1) s.apply(Gate::x(q));
        s.apply(Gate::toffoli(0, 1, 2));
        const uint64_t want = ((in >> 1) == 3) ? (in ^ 1) : in;
        CHECK(std::abs(s.amp(want) - 1.0) < 1e-12);
    }
}

TEST_CASE("measurement examples") {
    Rng rng(5);
    PureState s(1);
    CHECK(s.measure(0, rng) == 0);
    CHECK(s.measure(0, rng) == 0);  // repeated measurement agrees

    // Born statistics on the plus state, 1e5 samples within 4 sigma.
    long ones = 0;
    const long trials = 100000;
    for (long t = 0; t < trials; ++t) {
        PureState p(1);
        p.apply(Gate::h(0));
        ones += p.measure(0, rng);
    }
    const double freq = static_cast<double>(ones) / trials;
    CHECK(std::abs(freq - 0.5) < 4.0 * std::sqrt(0.25 / trials));

    // Perfect correlation on a Bell pair.
    for (int t = 0; t < 50; ++t) {
        PureState bell(2);
        bell.apply(Gate::h(0));
        bell.apply(Gate::cnot(0, 1));
        const int first = bell.measure(0, rng);
        CHECK(bell.measure(1, rng) == first);
    }
}

TEST_CASE("fidelity") {
    PureState zero(1), one(1), plus(1);
    one.apply(Gate::x(0));
    plus.apply(Gate::h(0));
    CHECK(fidelity(zero, zero) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(zero, plus) == doctest::Approx(fidelity(plus, zero)).epsilon(1e-14));
    PureState two(2);
    CHECK_THROWS_AS(fidelity(zero, two), std::invalid_argument);
}

TEST_CASE("norm preservation and involutions on random states") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        PureState s = random_state(4, rng);
        const PureState ref = s;
        const int q = static_cast<int>(rng.below(4));

        for (auto kind : {GateKind::X, GateKind::Z, GateKind::Hadamard}) {
            s.apply({kind, q});
            CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
            s.apply({kind, q});
            CHECK(fidelity(s, ref) == doctest::Approx(1.0).epsilon(1e-12));
        }
        s.apply(Gate::p(q));
        s.apply(Gate::p_dag(q));
        CHECK(fidelity(s, ref) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Hadamard conjugation reverses an XOR") {
    // (R x R) CNOT(a->b) (R x R) = CNOT(b->a) on basis and random states.
    Rng rng(23);
    for (int trial = 0; trial < 14; ++trial) {
        PureState s = trial < 4 ? PureState(2) : random_state(2, rng);
        if (trial < 4) {
            if (trial & 2) s.apply(Gate::x(0));
            if (trial & 1) s.apply(Gate::x(1));
        }
        PureState t = s;

        s.apply(Gate::h(0));
        s.apply(Gate::h(1));
        s.apply(Gate::cnot(0, 1));
        s.apply(Gate::h(0));
        s.apply(Gate::h(1));
        t.apply(Gate::cnot(1, 0));

        for (uint64_t i = 0; i < 4; ++i) CHECK(std::abs(s.amp(i) - t.amp(i)) < 1e-12);
    }
}

TEST_CASE("leaked qubits freeze gates and refuse measurement") {
    Rng rng(3);
    PureState s = random_state(2, rng);
    const PureState ref = s;
    s.set_leaked(0, true);
    s.apply(Gate::h(0));
    s.apply(Gate::cnot(0, 1));
    s.apply(Gate::cz(1, 0));
    for (uint64_t i = 0; i < 4; ++i) CHECK(s.amp(i) == ref.amp(i));
    CHECK_THROWS_AS(s.measure(0, rng), std::logic_error);
    s.set_leaked(0, false);
    CHECK_NOTHROW(s.measure(0, rng));
}

TEST_CASE("circuit execution") {
    Rng rng(9);
    SUBCASE("empty circuit") {
        Circuit c(2);
        PureState s(2);
        CHECK(run(c, s, rng).empty());
        CHECK(std::abs(s.amp(0) - 1.0) < 1e-15);
    }
    SUBCASE("Bell preparation") {
        Circuit c(2);
        c.gate(Gate::h(0)).gate(Gate::cnot(0, 1));
        PureState s(2);
        run(c, s, rng);
        CHECK(std::abs(s.amp(0b00) - kInvSqrt2) < 1e-12);
        CHECK(std::abs(s.amp(0b11) - kInvSqrt2) < 1e-12);
    }
    SUBCASE("leak-check step reads the flag without disturbance") {
        Circuit c(1);
        c.leak_check(0);
        PureState s(1);
        s.apply(Gate::h(0));
        CHECK(run(c, s, rng) == std::vector<int>{1});
        s.set_leaked(0, true);
        CHECK(run(c, s, rng) == std::vector<int>{0});
    }
    SUBCASE("size mismatch") {
        Circuit c(3);
        PureState s(2);
        CHECK_THROWS_AS(run(c, s, rng), std::invalid_argument);
    }
}

TEST_CASE("random circuits preserve the norm") {
    Rng rng(31);
    PureState s = random_state(4, rng);
    for (int step = 0; step < 60; ++step) {
        const int q = static_cast<int>(rng.below(4));
        int q2 = static_cast<int>(rng.below(4));
        if (q2 == q) q2 = (q + 1) % 4;
        switch (rng.below(6)) {
            case 0: s.apply(Gate::h(q)); break;
            case 1: s.apply(Gate::p(q)); break;
            case 2: s.apply(Gate::x(q)); break;
            case 3: s.apply(Gate::cnot(q, q2)); break;
            case 4: s.apply(Gate::cz(q, q2)); break;
            default: s.apply(Gate::p_theta(q, rng.uniform() * std::numbers::pi)); break;
        }
        CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("inject_product rejects occupied targets") {
    PureState s(2);
    s.apply(Gate::x(0));
    const std::array<int, 1> q = {0};
    const std::array<cplx, 2> amps = {1.0, 0.0};
    CHECK_THROWS_AS(s.inject_product(q, amps), std::logic_error);
}
