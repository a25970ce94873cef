#include <doctest.h>

#include <cmath>

#include "qeclab/engine.hpp"
#include "qeclab/noise.hpp"
#include "qeclab/stabsim.hpp"
#include "qeclab/verify.hpp"

using namespace qeclab;
using namespace qeclab::stab;

TEST_CASE("fresh tableau stabilizes |0...0>") {
    Tableau t1(1);
    CHECK(t1.stabilizer_z(0, 0));
    CHECK(!t1.stabilizer_x(0, 0));
    CHECK(!t1.stabilizer_sign(0));

    Tableau t7(7);
    Rng rng(1);
    for (int q = 0; q < 7; ++q) {
        CHECK(t7.stabilizer_z(q, q));
        const auto r = t7.measure_z(q, rng);
        CHECK(r.outcome == 0);
        CHECK(r.deterministic);
    }
    CHECK(t7.invariants_hold());
}

TEST_CASE("generator updates under H and CNOT") {
    Tableau t(1);
    t.h(0);
    CHECK(t.stabilizer_x(0, 0));
    CHECK(!t.stabilizer_z(0, 0));
    CHECK(!t.stabilizer_sign(0));

    Tableau u(2);
    u.cnot(0, 1);
    // {+Z1, +Z2} -> {+Z1, +Z1 Z2}
    CHECK(u.stabilizer_z(0, 0));
    CHECK(!u.stabilizer_z(0, 1));
    CHECK(u.stabilizer_z(1, 0));
    CHECK(u.stabilizer_z(1, 1));
    CHECK(!u.stabilizer_sign(0));
    CHECK(!u.stabilizer_sign(1));
}

TEST_CASE("non-Clifford gates are rejected") {
    Tableau t(3);
    CHECK_THROWS_WITH_AS(apply_clifford(t, sv::Gate::toffoli(0, 1, 2)),
                         "apply_clifford: non-Clifford gate", std::invalid_argument);
    CHECK_THROWS_AS(apply_clifford(t, sv::Gate::p_theta(0, 0.3)), std::invalid_argument);
    CHECK_NOTHROW(apply_clifford(t, sv::Gate::h(0)));
    CHECK_NOTHROW(apply_clifford(t, sv::Gate::cnot(0, 1)));
}

TEST_CASE("measurement statistics and determinism") {
    Rng rng(7);
    {
        Tableau t(1);
        t.x(0);
        const auto r = t.measure_z(0, rng);
        CHECK(r.outcome == 1);
        CHECK(r.deterministic);
    }
    long ones = 0;
    const long trials = 100000;
    for (long k = 0; k < trials; ++k) {
        Tableau t(1);
        t.h(0);
        const auto r = t.measure_z(0, rng);
        CHECK(!r.deterministic);
        ones += r.outcome;
    }
    const double freq = static_cast<double>(ones) / trials;
    CHECK(std::abs(freq - 0.5) < 4.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("error injection") {
    Rng rng(3);
    {
        Tableau t(7);
        t.inject(PauliError::single(7, 0, 'X'));
        CHECK(t.measure_z(0, rng).outcome == 1);
    }
    {
        Tableau t(7);
        t.inject(PauliError::single(7, 0, 'Z'));
        const auto r = t.measure_z(0, rng);
        CHECK(r.outcome == 0);  // Z commutes with the stabilizers of |0...0>
        CHECK(r.deterministic);
    }
    {
        Tableau t(5);
        t.h(0);
        t.cnot(0, 1);
        const Tableau ref = t;
        PauliError e(5);
        e.set(1, true, true);
        e.set(3, false, true);
        t.inject(e);
        CHECK(!(t == ref));
        t.inject(e);
        CHECK(t == ref);  // involution
    }
}

TEST_CASE("Pauli propagation through an XOR") {
    // X on the source spreads to the target; Z on the target spreads back.
    {
        Tableau a(2), b(2);
        a.inject(PauliError::single(2, 0, 'X'));
        a.cnot(0, 1);
        b.cnot(0, 1);
        PauliError both(2);
        both.set(0, true, false);
        both.set(1, true, false);
        b.inject(both);
        CHECK(a == b);
    }
    {
        Tableau a(2), b(2);
        a.inject(PauliError::single(2, 1, 'Z'));
        a.cnot(0, 1);
        b.cnot(0, 1);
        PauliError both(2);
        both.set(0, false, true);
        both.set(1, false, true);
        b.inject(both);
        CHECK(a == b);
    }
}

TEST_CASE("noise sampling distribution") {
    Rng rng(11);
    NoiseModel zero;
    const std::array<int, 3> qubits = {0, 1, 2};
    for (int k = 0; k < 100; ++k)
        CHECK(sample_noise(zero, NoiseEventKind::Rest, qubits, 8, rng).is_identity());

    // eps_store = 1: every resting qubit damaged, each kind 1/3 within 4 sigma.
    NoiseModel always;
    always.eps_store = 1.0;
    const long trials = 100000;
    long x = 0, y = 0, z = 0;
    const std::array<int, 1> one = {0};
    for (long t = 0; t < trials; ++t) {
        const auto e = sample_noise(always, NoiseEventKind::Rest, one, 2, rng);
        CHECK(!e.is_identity());
        if (e.x_bit(0) && e.z_bit(0))
            ++y;
        else if (e.x_bit(0))
            ++x;
        else
            ++z;
    }
    const double tol = 4.0 * std::sqrt((1.0 / 3) * (2.0 / 3) / trials);
    CHECK(std::abs(static_cast<double>(x) / trials - 1.0 / 3) < tol);
    CHECK(std::abs(static_cast<double>(y) / trials - 1.0 / 3) < tol);
    CHECK(std::abs(static_cast<double>(z) / trials - 1.0 / 3) < tol);

    // A faulty XOR damages both touched qubits, marginals uniform.
    NoiseModel xor_always;
    xor_always.eps_xor = 1.0;
    const std::array<int, 2> pair = {0, 1};
    std::array<long, 3> kind0{}, kind1{};
    for (long t = 0; t < trials; ++t) {
        const auto e = sample_noise(xor_always, NoiseEventKind::XorGate, pair, 2, rng);
        for (int q = 0; q < 2; ++q) {
            CHECK((e.x_bit(q) || e.z_bit(q)));
            auto& hist = q == 0 ? kind0 : kind1;
            if (e.x_bit(q) && e.z_bit(q))
                ++hist[1];
            else if (e.x_bit(q))
                ++hist[0];
            else
                ++hist[2];
        }
    }
    for (const auto& hist : {kind0, kind1})
        for (long count : hist)
            CHECK(std::abs(static_cast<double>(count) / trials - 1.0 / 3) < tol);
}

TEST_CASE("zero-rate noise never perturbs a trajectory") {
    Rng rng_a(13), rng_b(13);
    Tableau a(6), b(6);
    TableauEngine noisy(a, NoiseModel::uniform(0.0, 0.0), &rng_a);
    TableauEngine plain(b, {}, &rng_b);
    for (auto* e : {&noisy, &plain}) {
        e->h(0);
        e->cnot(0, 1);
        e->cnot(1, 2);
        e->s(3);
        e->cz(2, 3);
        e->measure(1);
        e->h(4);
        e->cnot(4, 5);
        e->measure(4);
    }
    CHECK(a == b);
}

TEST_CASE("invariants hold through random circuits, including wide tableaux") {
    Rng rng(17);
    for (int n : {6, 64, 128}) {
        Tableau t(n);
        for (int step = 0; step < 60; ++step) {
            const int q = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            int q2 = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            if (q2 == q) q2 = (q + 1) % n;
            switch (rng.below(5)) {
                case 0: t.h(q); break;
                case 1: t.s(q); break;
                case 2: t.cnot(q, q2); break;
                case 3: t.cz(q, q2); break;
                default: t.measure_z(q, rng); break;
            }
        }
        CHECK(t.invariants_hold());
    }
}

TEST_CASE("conformance against the dense simulator") {
    const auto r = verify::check_conformance();
    CHECK(r.failed == 0);
    CHECK(r.passed > 1000);
}

TEST_CASE("leaked qubits") {
    Rng rng(19);
    Tableau t(2);
    t.h(0);
    const Tableau ref = t;
    t.set_leaked(0, true);
    t.h(0);
    t.cnot(0, 1);
    CHECK_THROWS_AS(t.measure_z(0, rng), std::logic_error);
    t.set_leaked(0, false);
    CHECK(t == ref);  // the gates above were frozen
    CHECK_NOTHROW(t.measure_z(0, rng));
}
