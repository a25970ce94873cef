#include "qeclab/hamming.hpp"

#include <algorithm>
#include <stdexcept>

namespace qeclab::hamming {

Word7 Word7::parse(const std::string& s) {
    if (s.size() != 7) throw std::invalid_argument("Word7::parse: need exactly 7 characters");
    uint8_t bits = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("Word7::parse: not a binary digit");
        bits = static_cast<uint8_t>((bits << 1) | (c == '1'));
    }
    return Word7(bits);
}

std::string Word7::to_string() const {
    std::string s(7, '0');
    for (int p = 1; p <= 7; ++p) s[p - 1] = static_cast<char>('0' + bit(p));
    return s;
}

std::array<int, 4> CheckMatrix::row_support(int row) const {
    std::array<int, 4> out{};
    int k = 0;
    for (int p = 1; p <= 7; ++p) {
        if ((rows[row - 1] >> (7 - p)) & 1) out[k++] = p;
    }
    if (k != 4) throw std::logic_error("CheckMatrix::row_support: row weight is not 4");
    return out;
}

const CodewordSet& codewords() {
    static const CodewordSet set = [] {
        CodewordSet s{};
        int ne = 0, no = 0, na = 0;
        for (uint8_t w = 0; w < 128; ++w) {
            Word7 word(w);
            if (!parity_check(word).trivial()) continue;
            s.all[na++] = word;
            if (word.even_weight())
                s.even[ne++] = word;
            else
                s.odd[no++] = word;
        }
        if (ne != 8 || no != 8 || na != 16) throw std::logic_error("codeword enumeration broken");
        return s;
    }();
    return set;
}

}  // namespace qeclab::hamming
