#include "promptveil/types.hpp"

#include <array>

namespace promptveil {

namespace {

constexpr std::array<const char*, kCategoryCount> kCategoryNames = {
    "PERSON",       "EMAIL",         "PHONE",        "ADDRESS",
    "NATIONAL_ID",  "ACCOUNT",       "DATE_OF_BIRTH", "FINANCIAL_REF",
    "MEDICAL",      "ORG_TERM",      "CONTEXT_SENSITIVE", "VISUAL_TEXT",
};

}  // namespace

const char* to_string(PrivacyCategory c) {
    return kCategoryNames[static_cast<size_t>(c)];
}

const char* to_string(SpanSource s) {
    switch (s) {
        case SpanSource::RULE: return "RULE";
        case SpanSource::NER: return "NER";
        case SpanSource::CONTEXT: return "CONTEXT";
        case SpanSource::VISUAL: return "VISUAL";
    }
    return "RULE";
}

const char* to_string(RiskTier t) {
    switch (t) {
        case RiskTier::LOW: return "LOW";
        case RiskTier::MED: return "MED";
        case RiskTier::HIGH: return "HIGH";
    }
    return "LOW";
}

const char* to_string(SanitizationMode m) {
    switch (m) {
        case SanitizationMode::PLACEHOLDER: return "PLACEHOLDER";
        case SanitizationMode::ABSTRACT: return "ABSTRACT";
        case SanitizationMode::SYMBOLIC: return "SYMBOLIC";
    }
    return "PLACEHOLDER";
}

bool parse_category(std::string_view name, PrivacyCategory& out) {
    for (size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (name == kCategoryNames[i]) {
            out = static_cast<PrivacyCategory>(i);
            return true;
        }
    }
    return false;
}

RiskTier default_risk_tier(PrivacyCategory c) {
    switch (c) {
        case PrivacyCategory::NATIONAL_ID:
        case PrivacyCategory::ACCOUNT:
        case PrivacyCategory::DATE_OF_BIRTH:
        case PrivacyCategory::FINANCIAL_REF:
            return RiskTier::HIGH;
        case PrivacyCategory::PERSON:
        case PrivacyCategory::ORG_TERM:
            return RiskTier::LOW;
        default:
            return RiskTier::MED;
    }
}

}  // namespace promptveil
