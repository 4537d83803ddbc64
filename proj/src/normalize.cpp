#include "promptveil/normalize.hpp"

namespace promptveil {

namespace {

// Cyrillic and Greek letters visually confusable with Basic Latin, plus a few
// common spacing/quote forms. Fullwidth ASCII is folded separately by range.
const std::vector<ConfusableEntry> kConfusables = {
    // Cyrillic uppercase
    {0x0410, 'A'}, {0x0412, 'B'}, {0x0415, 'E'}, {0x041A, 'K'},
    {0x041C, 'M'}, {0x041D, 'H'}, {0x041E, 'O'}, {0x0420, 'P'},
    {0x0421, 'C'}, {0x0422, 'T'}, {0x0423, 'Y'}, {0x0425, 'X'},
    {0x0405, 'S'}, {0x0406, 'I'}, {0x0408, 'J'},
    // Cyrillic lowercase
    {0x0430, 'a'}, {0x0432, 'b'}, {0x0435, 'e'}, {0x043A, 'k'},
    {0x043C, 'm'}, {0x043D, 'h'}, {0x043E, 'o'}, {0x0440, 'p'},
    {0x0441, 'c'}, {0x0442, 't'}, {0x0443, 'y'}, {0x0445, 'x'},
    {0x0455, 's'}, {0x0456, 'i'}, {0x0458, 'j'}, {0x0451, 'e'},
    // Greek uppercase
    {0x0391, 'A'}, {0x0392, 'B'}, {0x0395, 'E'}, {0x0396, 'Z'},
    {0x0397, 'H'}, {0x0399, 'I'}, {0x039A, 'K'}, {0x039C, 'M'},
    {0x039D, 'N'}, {0x039F, 'O'}, {0x03A1, 'P'}, {0x03A4, 'T'},
    {0x03A5, 'Y'}, {0x03A7, 'X'},
    // Greek lowercase
    {0x03B1, 'a'}, {0x03BF, 'o'}, {0x03BD, 'v'}, {0x03B9, 'i'},
    {0x03BA, 'k'}, {0x03C1, 'p'}, {0x03C5, 'u'}, {0x03C4, 't'},
    // Spacing and punctuation lookalikes
    {0x00A0, ' '}, {0x2007, ' '}, {0x202F, ' '}, {0x3000, ' '},
    {0x2010, '-'}, {0x2011, '-'}, {0x2012, '-'}, {0x2013, '-'},
    {0x2014, '-'}, {0x2212, '-'},
    {0x2018, '\''}, {0x2019, '\''}, {0x201C, '"'}, {0x201D, '"'},
};

bool is_zero_width(uint32_t cp) {
    return cp == 0x200B || cp == 0x200C || cp == 0x200D || cp == 0xFEFF;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

const std::vector<ConfusableEntry>& confusables_table() { return kConfusables; }

uint32_t fold_codepoint(uint32_t cp) {
    if (is_zero_width(cp)) return 0;
    // Fullwidth ASCII block.
    if (cp >= 0xFF01 && cp <= 0xFF5E) return cp - 0xFF01 + 0x21;
    for (const auto& e : kConfusables) {
        if (e.codepoint == cp) return static_cast<uint32_t>(e.ascii);
    }
    return cp;
}

std::vector<uint32_t> decode_utf8(std::string_view text) {
    std::vector<uint32_t> out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        unsigned char b0 = static_cast<unsigned char>(text[i]);
        uint32_t cp = 0xFFFD;
        size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0 && i + 1 < text.size()) {
            cp = (b0 & 0x1Fu) << 6 | (text[i + 1] & 0x3Fu);
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0 && i + 2 < text.size()) {
            cp = (b0 & 0x0Fu) << 12 | (text[i + 1] & 0x3Fu) << 6 |
                 (text[i + 2] & 0x3Fu);
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0 && i + 3 < text.size()) {
            cp = (b0 & 0x07u) << 18 | (text[i + 1] & 0x3Fu) << 12 |
                 (text[i + 2] & 0x3Fu) << 6 | (text[i + 3] & 0x3Fu);
            len = 4;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string normalize_surface(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    bool have_content = false;
    for (uint32_t cp : decode_utf8(text)) {
        uint32_t folded = fold_codepoint(cp);
        if (folded == 0) continue;  // zero-width dropped
        bool is_space = folded == ' ' || folded == '\t' || folded == '\n' ||
                        folded == '\r' || folded == '\f' || folded == '\v';
        if (is_space) {
            pending_space = have_content;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, folded);
        have_content = true;
    }
    return out;
}

}  // namespace promptveil
