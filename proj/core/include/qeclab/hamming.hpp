#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>

namespace qeclab::hamming {

/// A length-7 binary word, bit-packed. Position p in 1..7 lives at bit (7-p),
/// so the packed integer reads the same way as the printed string: the word
/// "0001111" is 0b0001111 = 15, with positions 4..7 set.
class Word7 {
  public:
    constexpr Word7() = default;
    constexpr explicit Word7(uint8_t bits) : bits_(static_cast<uint8_t>(bits & 0x7f)) {}

    static Word7 parse(const std::string& s);

    constexpr int bit(int position) const { return (bits_ >> (7 - position)) & 1; }
    constexpr Word7 with_flip(int position) const {
        return Word7(static_cast<uint8_t>(bits_ ^ (1u << (7 - position))));
    }
    constexpr int weight() const { return std::popcount(bits_); }
    constexpr bool even_weight() const { return (weight() & 1) == 0; }
    constexpr uint8_t packed() const { return bits_; }
    constexpr Word7 complement() const { return Word7(static_cast<uint8_t>(~bits_ & 0x7f)); }

    std::string to_string() const;

    friend constexpr Word7 operator^(Word7 a, Word7 b) {
        return Word7(static_cast<uint8_t>(a.bits_ ^ b.bits_));
    }
    friend constexpr bool operator==(Word7 a, Word7 b) = default;
    friend constexpr auto operator<=>(Word7 a, Word7 b) = default;

  private:
    uint8_t bits_ = 0;
};

/// Parity bits of one Hamming check, also readable as the integer 0..7 whose
/// binary digits are (s1 s2 s3). In the canonical matrix that integer is the
/// column index of a single flipped bit, and 0 means "no error".
class ClassicalSyndrome {
  public:
    constexpr ClassicalSyndrome() = default;
    constexpr explicit ClassicalSyndrome(int value) : value_(static_cast<uint8_t>(value & 7)) {}

    constexpr int bit(int row) const { return (value_ >> (3 - row)) & 1; }
    constexpr int value() const { return value_; }
    constexpr bool trivial() const { return value_ == 0; }

    friend constexpr bool operator==(ClassicalSyndrome, ClassicalSyndrome) = default;

  private:
    uint8_t value_ = 0;
};

/// Three rows of seven bits, packed like Word7. Canonical form: column p is
/// the 3-bit binary representation of p. The encoder form differs from it by a
/// column permutation only; see kEncoderToCanonicalColumn.
struct CheckMatrix {
    std::array<uint8_t, 3> rows;

    static constexpr CheckMatrix canonical() { return {{0b0001111, 0b0110011, 0b1010101}}; }
    static constexpr CheckMatrix encoder_form() { return {{0b1001011, 0b0101101, 0b0011110}}; }

    constexpr ClassicalSyndrome syndrome(Word7 w) const {
        int v = 0;
        for (int r = 0; r < 3; ++r) {
            v = (v << 1) | (std::popcount(static_cast<uint8_t>(rows[r] & w.packed())) & 1);
        }
        return ClassicalSyndrome(v);
    }
    constexpr bool annihilates(Word7 w) const { return syndrome(w).trivial(); }
    /// Positions (1..7) whose column has row `row` set.
    std::array<int, 4> row_support(int row) const;
};

/// Column j of the encoder-form matrix equals column kEncoderToCanonicalColumn[j-1]
/// of the canonical matrix; relabeling bits this way maps one codeword set onto
/// the other.
inline constexpr std::array<int, 7> kEncoderToCanonicalColumn = {4, 2, 1, 7, 3, 5, 6};

struct CodewordSet {
    std::array<Word7, 8> even;
    std::array<Word7, 8> odd;
    std::array<Word7, 16> all;
};

/// All 16 codewords of the canonical [7,4,3] Hamming code, split by weight
/// parity. Each half is sorted by packed value.
const CodewordSet& codewords();

/// H * w (mod 2) with the canonical matrix.
constexpr ClassicalSyndrome parity_check(Word7 w) { return CheckMatrix::canonical().syndrome(w); }

struct DecodeResult {
    Word7 corrected;
    int error_position;  // 0 when the word already passes the parity check
};

/// Single-error decoding: the syndrome value is the flipped position. Words at
/// distance two from a codeword are misdecoded to a third position; that is the
/// code's documented failure mode, not an error condition.
constexpr DecodeResult decode_single(Word7 w) {
    const ClassicalSyndrome s = parity_check(w);
    if (s.trivial()) return {w, 0};
    return {w.with_flip(s.value()), s.value()};
}

}  // namespace qeclab::hamming
