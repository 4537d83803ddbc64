#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace promptveil {

// One confusable mapping: non-ASCII code point -> ASCII replacement.
struct ConfusableEntry {
    uint32_t codepoint;
    char ascii;
};

// The shipped Cyrillic/Greek/fullwidth-to-ASCII confusable table. Fullwidth
// forms U+FF01..U+FF5E are folded by offset in addition to these entries.
const std::vector<ConfusableEntry>& confusables_table();

// Folds a single code point: returns the ASCII replacement, 0 if the code
// point should be dropped (zero-width characters), or the code point itself
// when no fold applies.
uint32_t fold_codepoint(uint32_t cp);

// Canonicalizes surface forms: confusable code points folded to ASCII,
// zero-width characters removed, whitespace runs collapsed to single spaces,
// leading/trailing whitespace trimmed. Total and idempotent.
std::string normalize_surface(std::string_view text);

// Decodes UTF-8 into code points; invalid bytes map to U+FFFD.
std::vector<uint32_t> decode_utf8(std::string_view text);

}  // namespace promptveil
