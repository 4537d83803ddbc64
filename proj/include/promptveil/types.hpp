#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace promptveil {

// Closed category set. The eight benchmark primary categories map injectively
// into this enumeration; the remaining members appear as secondary or
// channel-specific spans.
enum class PrivacyCategory : uint8_t {
    PERSON = 0,
    EMAIL,
    PHONE,
    ADDRESS,
    NATIONAL_ID,
    ACCOUNT,
    DATE_OF_BIRTH,
    FINANCIAL_REF,
    MEDICAL,
    ORG_TERM,
    CONTEXT_SENSITIVE,
    VISUAL_TEXT,
};

constexpr int kCategoryCount = 12;

enum class SpanSource : uint8_t { RULE = 0, NER, CONTEXT, VISUAL };

enum class RiskTier : uint8_t { LOW = 0, MED, HIGH };

enum class SanitizationMode : uint8_t { PLACEHOLDER = 0, ABSTRACT, SYMBOLIC };

const char* to_string(PrivacyCategory c);
const char* to_string(SpanSource s);
const char* to_string(RiskTier t);
const char* to_string(SanitizationMode m);

bool parse_category(std::string_view name, PrivacyCategory& out);

// Deployment risk tier assigned per category (benchmark metadata convention).
RiskTier default_risk_tier(PrivacyCategory c);

// One detected or gold sensitive span. Offsets are byte offsets into the
// normalized prompt text; surface must equal text[start, end).
struct SpanAnnotation {
    size_t start = 0;
    size_t end = 0;
    std::string surface;
    PrivacyCategory category = PrivacyCategory::PERSON;
    double confidence = 1.0;
    SpanSource source = SpanSource::RULE;

    size_t length() const { return end - start; }
    bool overlaps(const SpanAnnotation& other) const {
        return start < other.end && other.start < end;
    }
};

// Structured annotation over one prompt: spans sorted by start, non-overlapping.
struct Annotation {
    std::string prompt_id;
    std::string normalized_text;
    std::vector<SpanAnnotation> spans;
};

}  // namespace promptveil
