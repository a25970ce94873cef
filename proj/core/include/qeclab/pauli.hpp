#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qeclab::stab {

/// n-qubit Pauli, phase-free: per qubit an (x, z) bit pair.
/// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y. Packed 64 qubits per word.
struct PauliError {
    int n = 0;
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;

    PauliError() = default;
    explicit PauliError(int n_qubits)
        : n(n_qubits),
          x(static_cast<size_t>((n_qubits + 63) / 64), 0),
          z(static_cast<size_t>((n_qubits + 63) / 64), 0) {}

    static PauliError identity(int n_qubits) { return PauliError(n_qubits); }

    static PauliError single(int n_qubits, int qubit, char kind) {
        PauliError e(n_qubits);
        e.set(qubit, kind == 'X' || kind == 'Y', kind == 'Z' || kind == 'Y');
        return e;
    }

    void set(int qubit, bool xbit, bool zbit) {
        if (qubit < 0 || qubit >= n) throw std::out_of_range("PauliError: qubit out of range");
        const size_t w = static_cast<size_t>(qubit) / 64;
        const uint64_t m = uint64_t{1} << (qubit % 64);
        x[w] = xbit ? (x[w] | m) : (x[w] & ~m);
        z[w] = zbit ? (z[w] | m) : (z[w] & ~m);
    }

    bool x_bit(int qubit) const { return (x[static_cast<size_t>(qubit) / 64] >> (qubit % 64)) & 1; }
    bool z_bit(int qubit) const { return (z[static_cast<size_t>(qubit) / 64] >> (qubit % 64)) & 1; }

    bool is_identity() const {
        for (size_t w = 0; w < x.size(); ++w)
            if (x[w] | z[w]) return false;
        return true;
    }

    int weight() const {
        int c = 0;
        for (size_t w = 0; w < x.size(); ++w) c += std::popcount(x[w] | z[w]);
        return c;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        for (int q = 0; q < n; ++q)
            if (x_bit(q) || z_bit(q)) out.push_back(q);
        return out;
    }

    PauliError& operator^=(const PauliError& other) {
        for (size_t w = 0; w < x.size(); ++w) {
            x[w] ^= other.x[w];
            z[w] ^= other.z[w];
        }
        return *this;
    }

    friend bool operator==(const PauliError&, const PauliError&) = default;
};

}  // namespace qeclab::stab
