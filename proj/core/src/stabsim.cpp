#include "qeclab/stabsim.hpp"

#include <bit>
#include <stdexcept>

namespace qeclab::stab {

Tableau::Tableau(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Tableau: need at least one qubit");
    words_ = static_cast<size_t>((n + 63) / 64);
    xz_.assign(static_cast<size_t>(4 * n) * words_, 0);
    r_.assign(static_cast<size_t>(2 * n), 0);
    leaked_.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        xr(i)[i / 64] |= uint64_t{1} << (i % 64);       // destabilizer X_i
        zr(n + i)[i / 64] |= uint64_t{1} << (i % 64);   // stabilizer Z_i
    }
}

void Tableau::check_qubit(int q) const {
    if (q < 0 || q >= n_) throw std::out_of_range("Tableau: qubit index out of range");
}

void Tableau::h(int q) {
    check_qubit(q);
    if (is_leaked(q)) return;
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int i = 0; i < 2 * n_; ++i) {
        uint64_t& xb = xr(i)[w];
        uint64_t& zb = zr(i)[w];
        r_[static_cast<size_t>(i)] ^= ((xb & zb & m) != 0);
        const uint64_t diff = (xb ^ zb) & m;
        xb ^= diff;
        zb ^= diff;
    }
}

void Tableau::s(int q) {
    check_qubit(q);
    if (is_leaked(q)) return;
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int i = 0; i < 2 * n_; ++i) {
        r_[static_cast<size_t>(i)] ^= ((xr(i)[w] & zr(i)[w] & m) != 0);
        zr(i)[w] ^= xr(i)[w] & m;
    }
}

void Tableau::z(int q) {
    check_qubit(q);
    if (is_leaked(q)) return;
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int i = 0; i < 2 * n_; ++i) r_[static_cast<size_t>(i)] ^= ((xr(i)[w] & m) != 0);
}

void Tableau::x(int q) {
    check_qubit(q);
    if (is_leaked(q)) return;
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int i = 0; i < 2 * n_; ++i) r_[static_cast<size_t>(i)] ^= ((zr(i)[w] & m) != 0);
}

void Tableau::y(int q) {
    check_qubit(q);
    if (is_leaked(q)) return;
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int i = 0; i < 2 * n_; ++i)
        r_[static_cast<size_t>(i)] ^= (((xr(i)[w] ^ zr(i)[w]) & m) != 0);
}

void Tableau::sdg(int q) {
    z(q);
    s(q);
}

void Tableau::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("Tableau: cnot qubits must be distinct");
    if (is_leaked(control) || is_leaked(target)) return;
    const size_t wc = static_cast<size_t>(control) / 64, wt = static_cast<size_t>(target) / 64;
    const uint64_t mc = uint64_t{1} << (control % 64), mt = uint64_t{1} << (target % 64);
    for (int i = 0; i < 2 * n_; ++i) {
        const bool xc = (xr(i)[wc] & mc) != 0;
        const bool zc = (zr(i)[wc] & mc) != 0;
        const bool xt = (xr(i)[wt] & mt) != 0;
        const bool zt = (zr(i)[wt] & mt) != 0;
        r_[static_cast<size_t>(i)] ^= (xc && zt && (xt == zc));
        if (xc) xr(i)[wt] ^= mt;
        if (zt) zr(i)[wc] ^= mc;
    }
}

void Tableau::cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (is_leaked(a) || is_leaked(b)) return;
    h(b);
    cnot(a, b);
    h(b);
}

void Tableau::rowsum(int h, int i) {
    int phase = 2 * r_[static_cast<size_t>(h)] + 2 * r_[static_cast<size_t>(i)];
    for (size_t w = 0; w < words_; ++w) {
        const uint64_t x1 = xr(i)[w], z1 = zr(i)[w];
        const uint64_t x2 = xr(h)[w], z2 = zr(h)[w];
        // i^g accumulation for the single-qubit Pauli product (row i on the left)
        const uint64_t plus = (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        const uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
        phase += std::popcount(plus) - std::popcount(minus);
        xr(h)[w] = x1 ^ x2;
        zr(h)[w] = z1 ^ z2;
    }
    phase = ((phase % 4) + 4) % 4;
    r_[static_cast<size_t>(h)] = (phase == 2);
}

int Tableau::measure_random_case(int q, int p, int forced_outcome) {
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int i = 0; i < 2 * n_; ++i) {
        if (i != p && (xr(i)[w] & m)) rowsum(i, p);
    }
    // The old stabilizer row becomes the destabilizer; the new stabilizer is
    // (+/-)Z_q with the measured sign.
    const int d = p - n_;
    for (size_t k = 0; k < words_; ++k) {
        xr(d)[k] = xr(p)[k];
        zr(d)[k] = zr(p)[k];
        xr(p)[k] = 0;
        zr(p)[k] = 0;
    }
    r_[static_cast<size_t>(d)] = r_[static_cast<size_t>(p)];
    zr(p)[w] |= m;
    r_[static_cast<size_t>(p)] = static_cast<uint8_t>(forced_outcome);
    return forced_outcome;
}

Tableau::MeasureResult Tableau::measure_z(int q, Rng& rng) {
    check_qubit(q);
    if (is_leaked(q)) throw std::logic_error("Tableau: cannot measure a leaked qubit");
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int p = n_; p < 2 * n_; ++p) {
        if (xr(p)[w] & m) {
            const int coin = static_cast<int>(rng.next_u64() & 1);
            return {measure_random_case(q, p, coin), false};
        }
    }
    // Deterministic: accumulate the stabilizer product that equals (+/-)Z_q.
    std::vector<uint64_t> sx(words_, 0), sz(words_, 0);
    uint8_t sr = 0;
    // Inline rowsum into the scratch row.
    auto scratch_rowsum = [&](int i) {
        int phase = 2 * sr + 2 * r_[static_cast<size_t>(i)];
        for (size_t k = 0; k < words_; ++k) {
            const uint64_t x1 = xr(i)[k], z1 = zr(i)[k];
            const uint64_t x2 = sx[k], z2 = sz[k];
            const uint64_t plus =
                (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
            const uint64_t minus =
                (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
            phase += std::popcount(plus) - std::popcount(minus);
            sx[k] = x1 ^ x2;
            sz[k] = z1 ^ z2;
        }
        phase = ((phase % 4) + 4) % 4;
        sr = (phase == 2);
    };
    for (int i = 0; i < n_; ++i) {
        if (xr(i)[w] & m) scratch_rowsum(n_ + i);
    }
    return {sr, true};
}

Tableau::MeasureResult Tableau::measure_z_forced(int q, int desired) {
    check_qubit(q);
    if (is_leaked(q)) throw std::logic_error("Tableau: cannot measure a leaked qubit");
    const size_t w = static_cast<size_t>(q) / 64;
    const uint64_t m = uint64_t{1} << (q % 64);
    for (int p = n_; p < 2 * n_; ++p) {
        if (xr(p)[w] & m) return {measure_random_case(q, p, desired & 1), false};
    }
    Rng unused(0);
    return measure_z(q, unused);  // deterministic path consumes no randomness
}

void Tableau::reset(int q, Rng& rng) {
    if (measure_z(q, rng).outcome == 1) x(q);
}

void Tableau::inject(const PauliError& e) {
    if (e.n != n_) throw std::invalid_argument("Tableau: error size mismatch");
    for (int i = 0; i < 2 * n_; ++i) {
        int anti = 0;
        for (size_t w = 0; w < words_; ++w)
            anti ^= std::popcount((xr(i)[w] & e.z[w]) ^ (zr(i)[w] & e.x[w])) & 1;
        r_[static_cast<size_t>(i)] ^= static_cast<uint8_t>(anti);
    }
}

void apply_clifford(Tableau& t, const sv::Gate& gate) {
    using sv::GateKind;
    switch (gate.kind) {
        case GateKind::X: t.x(gate.q0); return;
        case GateKind::Y: t.y(gate.q0); return;
        case GateKind::Z: t.z(gate.q0); return;
        case GateKind::Hadamard: t.h(gate.q0); return;
        case GateKind::Phase: t.s(gate.q0); return;
        case GateKind::PhaseDagger: t.sdg(gate.q0); return;
        case GateKind::CNOT: t.cnot(gate.q0, gate.q1); return;
        case GateKind::CZ: t.cz(gate.q0, gate.q1); return;
        case GateKind::Toffoli:
        case GateKind::PhaseTheta:
            throw std::invalid_argument("apply_clifford: non-Clifford gate");
    }
    throw std::invalid_argument("apply_clifford: unknown gate kind");
}

bool Tableau::invariants_hold() const {
    // Pairwise commutation of stabilizer rows.
    for (int i = n_; i < 2 * n_; ++i) {
        for (int j = i + 1; j < 2 * n_; ++j) {
            int anti = 0;
            for (size_t w = 0; w < words_; ++w)
                anti ^= std::popcount((xr(i)[w] & zr(j)[w]) ^ (zr(i)[w] & xr(j)[w])) & 1;
            if (anti) return false;
        }
    }
    // Rank n of the (x|z) stabilizer matrix over GF(2).
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(static_cast<size_t>(n_));
    for (int i = n_; i < 2 * n_; ++i) {
        std::vector<uint64_t> row(2 * words_);
        for (size_t w = 0; w < words_; ++w) {
            row[w] = xr(i)[w];
            row[words_ + w] = zr(i)[w];
        }
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (size_t col = 0; col < 2 * words_ * 64 && rank < n_; ++col) {
        const size_t w = col / 64;
        const uint64_t m = uint64_t{1} << (col % 64);
        int pivot = -1;
        for (int i = rank; i < n_; ++i) {
            if (rows[static_cast<size_t>(i)][w] & m) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(pivot)]);
        for (int i = 0; i < n_; ++i) {
            if (i != rank && (rows[static_cast<size_t>(i)][w] & m)) {
                for (size_t k = 0; k < 2 * words_; ++k)
                    rows[static_cast<size_t>(i)][k] ^= rows[static_cast<size_t>(rank)][k];
            }
        }
        ++rank;
    }
    return rank == n_;
}

}  // namespace qeclab::stab
