#include <doctest.h>

#include <string>

#include "promptveil/normalize.hpp"

using namespace promptveil;

namespace {

// Independent oracle: fold each code point by direct table lookup, with no
// whitespace handling. Valid for inputs without whitespace runs.
std::string brute_force_fold(const std::string& text) {
    std::string out;
    for (uint32_t cp : decode_utf8(text)) {
        char replacement = 0;
        for (const auto& e : confusables_table()) {
            if (e.codepoint == cp) {
                replacement = e.ascii;
                break;
            }
        }
        if (replacement != 0) {
            out.push_back(replacement);
        } else if (cp >= 0xFF01 && cp <= 0xFF5E) {
            out.push_back(static_cast<char>(cp - 0xFF01 + 0x21));
        } else if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else {
            // Oracle only supports table + fullwidth + ASCII inputs.
            REQUIRE(false);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("normalize is identity on plain ASCII") {
    CHECK(normalize_surface("Hello world") == "Hello world");
}

TEST_CASE("normalize folds Cyrillic confusables to the ASCII skeleton") {
    // Cyrillic Es (U+0421) and ie (U+0435) inside an otherwise ASCII string.
    std::string attacked = "\xD0\xA1"  "all m" "\xD0\xB5" " at 021-555-0147";
    std::string expected = brute_force_fold(attacked);
    CHECK(expected == "Call me at 021-555-0147");
    CHECK(normalize_surface(attacked) == expected);
}

TEST_CASE("normalize on empty input") {
    CHECK(normalize_surface("") == "");
}

TEST_CASE("whitespace runs collapse to single spaces and ends are trimmed") {
    CHECK(normalize_surface("a \t b\n\nc") == "a b c");
    CHECK(normalize_surface("  leading and trailing  ") == "leading and trailing");
}

TEST_CASE("fullwidth forms fold by offset") {
    // ＡＢＣ１２３ (U+FF21.. U+FF13)
    std::string fullwidth =
        "\xEF\xBC\xA1\xEF\xBC\xA2\xEF\xBC\xA3\xEF\xBC\x91\xEF\xBC\x92\xEF\xBC\x93";
    CHECK(normalize_surface(fullwidth) == "ABC123");
}

TEST_CASE("zero-width characters are stripped") {
    std::string zw = "pa\xE2\x80\x8Bss";  // U+200B inside "pass"
    CHECK(normalize_surface(zw) == "pass");
}

TEST_CASE("normalize is idempotent") {
    const char* samples[] = {
        "Hello   world",
        "\xD0\xA1"
        "all m"
        "\xD0\xB5"
        "  now",
        "  mixed\xEF\xBC\xA1 \t text \xE2\x80\x8B here ",
        "",
        "a",
        "tabs\tand\nnewlines\r\n",
    };
    for (const char* s : samples) {
        std::string once = normalize_surface(s);
        CHECK(normalize_surface(once) == once);
    }
}

TEST_CASE("confusables table holds the shipped Cyrillic/Greek entries") {
    CHECK(fold_codepoint(0x0421) == uint32_t('C'));
    CHECK(fold_codepoint(0x0435) == uint32_t('e'));
    CHECK(fold_codepoint(0x039F) == uint32_t('O'));
    CHECK(fold_codepoint('x') == uint32_t('x'));
    CHECK(confusables_table().size() >= 55);
}
