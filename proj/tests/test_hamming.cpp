#include <doctest.h>

#include <stdexcept>
#include "qeclab/hamming.hpp"

using namespace qeclab::hamming;

TEST_CASE("codeword enumeration and partition") {
    const auto& set = codewords();
    CHECK(set.all.size() == 16);

    auto contains = [](const auto& half, const char* s) {
        const Word7 w = Word7::parse(s);
        for (const auto& x : half)
            if (x == w) return true;
        return false;
    };
    CHECK(contains(set.even, "0000000"));
    CHECK(contains(set.even, "0001111"));
    CHECK(contains(set.odd, "1111111"));
    CHECK(contains(set.odd, "1110000"));

    for (const auto& w : set.even) CHECK(w.even_weight());
    for (const auto& w : set.odd) CHECK(!w.even_weight());
    for (const auto& w : set.all) CHECK(parity_check(w).trivial());
}

TEST_CASE("parity check examples") {
    CHECK(parity_check(Word7::parse("0000000")).value() == 0);
    CHECK(parity_check(Word7::parse("0001111")).value() == 0);

    // e5: syndrome is the binary representation of 5.
    const auto s = parity_check(Word7(0).with_flip(5));
    CHECK(s.bit(1) == 1);
    CHECK(s.bit(2) == 0);
    CHECK(s.bit(3) == 1);
    CHECK(s.value() == 5);
}

TEST_CASE("canonical columns are binary column indices") {
    for (int p = 1; p <= 7; ++p) CHECK(parity_check(Word7(0).with_flip(p)).value() == p);
}

TEST_CASE("single-error decoding, exhaustive over 112 cases") {
    const auto& set = codewords();
    for (const auto& cw : set.all) {
        const auto clean = decode_single(cw);
        CHECK(clean.error_position == 0);
        CHECK(clean.corrected == cw);
        for (int p = 1; p <= 7; ++p) {
            const auto dec = decode_single(cw.with_flip(p));
            CHECK(dec.error_position == p);
            CHECK(dec.corrected == cw);
        }
    }
}

TEST_CASE("two flips misdecode to a third position") {
    const auto dec = decode_single(Word7(0).with_flip(1).with_flip(2));
    CHECK(dec.error_position == 3);
    CHECK(dec.corrected == Word7::parse("1110000"));
    CHECK(parity_check(dec.corrected).trivial());
}

TEST_CASE("even subcode closure and complement pairing") {
    const auto& set = codewords();
    auto is_even_codeword = [&](Word7 w) {
        for (const auto& x : set.even)
            if (x == w) return true;
        return false;
    };
    for (const auto& u : set.even)
        for (const auto& v : set.even) CHECK(is_even_codeword(u ^ v));

    for (const auto& u : set.even) {
        bool found = false;
        for (const auto& x : set.odd) found = found || x == u.complement();
        CHECK(found);
    }
}

TEST_CASE("encoder-form matrix is a column relabeling of the canonical one") {
    const auto enc = CheckMatrix::encoder_form();
    for (int w = 0; w < 128; ++w) {
        const Word7 word(static_cast<uint8_t>(w));
        Word7 relabeled(0);
        for (int j = 1; j <= 7; ++j) {
            if (word.bit(j))
                relabeled = relabeled.with_flip(kEncoderToCanonicalColumn[static_cast<size_t>(j - 1)]);
        }
        CHECK(enc.annihilates(word) == parity_check(relabeled).trivial());
    }
}

TEST_CASE("row supports of the canonical matrix") {
    const auto m = CheckMatrix::canonical();
    CHECK(m.row_support(1) == std::array<int, 4>{4, 5, 6, 7});
    CHECK(m.row_support(2) == std::array<int, 4>{2, 3, 6, 7});
    CHECK(m.row_support(3) == std::array<int, 4>{1, 3, 5, 7});
}

TEST_CASE("word parsing and printing") {
    CHECK(Word7::parse("1010101").packed() == 0b1010101);
    CHECK(Word7(0b1010101).to_string() == "1010101");
    CHECK(Word7::parse("0001111").weight() == 4);
    CHECK_THROWS_AS(Word7::parse("101"), std::invalid_argument);
    CHECK_THROWS_AS(Word7::parse("10101012"), std::invalid_argument);
    CHECK_THROWS_AS(Word7::parse("1010102"), std::invalid_argument);
}
