#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "promptveil/types.hpp"

namespace promptveil {

enum class PromptFamily : uint8_t { DIRECT_REQUEST = 0, DOCUMENT, RETRIEVAL, TOOL_AGENT };
enum class PromptSource : uint8_t { DIALOGUE_TEMPLATE = 0, PUBLIC_TASK, DOCUMENT_SCENARIO, AGENT_TRACE };
const char* to_string(PromptFamily f);
const char* to_string(PromptSource s);

// EXACT slots accept only the exact value (or an authorized restoration);
// VALUE slots also accept typed placeholders, consistent symbolic tokens, and
// category-compatible abstractions; KEYWORD slots track task wording.
enum class SlotRequirement : uint8_t { EXACT = 0, VALUE, KEYWORD };
const char* to_string(SlotRequirement r);

struct SlotSpec {
    std::string key;
    SlotRequirement requirement = SlotRequirement::KEYWORD;
    PrivacyCategory category = PrivacyCategory::PERSON;
    std::string value;    // original surface, or the keyword phrase
    int span_index = -1;  // gold span index; -1 for keyword slots
};

struct GoldSpan {
    size_t start = 0;
    size_t end = 0;
    std::string surface;
    PrivacyCategory category = PrivacyCategory::PERSON;
    bool exact_value_required = false;    // q
    bool restoration_authorized = false;  // a
    RiskTier tier = RiskTier::LOW;
    // 0 = core content; 1 = dropped at the tool stage; 2 = dropped from the
    // memory stage onward. Drives the stage-forwarding windows.
    int echo_depth = 0;
};

struct PromptRecord {
    std::string id;
    int template_id = 0;
    int variant = 1;  // V1..V8
    PromptFamily family = PromptFamily::DIRECT_REQUEST;
    PromptSource source = PromptSource::DIALOGUE_TEMPLATE;
    bool essential = true;   // V1..V4
    bool ocr = false;        // V4 and V8
    PrivacyCategory primary_category = PrivacyCategory::PERSON;
    std::string text;        // normalized; post-noise for OCR variants
    std::string clean_text;  // pre-noise counterpart
    std::vector<GoldSpan> gold;
    std::vector<SlotSpec> slots;
    bool memory_verbose_log = false;
    bool tool_verbose_log = false;
    std::string split;  // train / dev / test
    uint64_t stage_seed = 0;
};

struct BenchmarkManifest {
    uint64_t seed = 0;
    std::string version = "cppb-manifest/1";
    std::vector<PromptRecord> prompts;
};

struct AccountingRow {
    std::string axis;
    std::string label;
    size_t count = 0;
    double percent = 0.0;
};

// Deterministic benchmark: 32 templates x 8 variants = 256 prompts, balanced
// 128/128 essential/incidental, 64 per family, 64 per source group, 32 per
// primary category, 192/64 text-only vs OCR-mediated, template-stratified
// 16/8/8 split with all eight variants of a template co-located.
BenchmarkManifest generate_benchmark(uint64_t seed);

// Per-character confusion noise at the given rate; offsets are stable (the
// table is 1:1) and gold surfaces are re-read from the noisy text.
extern const std::map<char, char>& default_ocr_confusions();
std::string apply_ocr_noise(const std::string& text, std::vector<GoldSpan>& gold,
                            double rate, std::mt19937_64& rng,
                            const std::map<char, char>& table = default_ocr_confusions());

std::vector<AccountingRow> account_manifest(const BenchmarkManifest& manifest);

void write_manifest(const BenchmarkManifest& manifest, const std::string& path);
BenchmarkManifest read_manifest(const std::string& path);

// Split membership files plus the accounting summary CSV.
void write_split_card(const BenchmarkManifest& manifest, const std::string& dir);

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b);

}  // namespace promptveil
