#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "promptveil/lexicons.hpp"
#include "promptveil/types.hpp"

namespace promptveil {

// Detector configuration. Source confidences place RULE above every profile
// threshold and CONTEXT below the lenient one, so lenient profiles drop
// contextual detections while balanced/strict keep them.
struct DetectorConfig {
    double tau = 0.55;
    double rule_confidence = 1.0;
    double ner_confidence = 0.85;
    double context_confidence = 0.60;
    double visual_confidence = 0.80;
    std::set<PrivacyCategory> high_risk;
    size_t context_window = 48;   // chars around a phrase scanned for triggers
    size_t capture_words = 4;     // words captured after a strong trigger
    bool second_context_pass = false;  // aggressive-contextual pipelines only

    const Lexicons* lexicons = &Lexicons::builtin();

    static DetectorConfig from_json_file(const std::string& path);
};

// Structured-entity recognizers over normalized text. All matches carry the
// configured RULE confidence and are deterministic.
std::vector<SpanAnnotation> run_rule_recognizers(std::string_view text,
                                                 const DetectorConfig& cfg);

// Gazetteer lookup of PERSON / ORG_TERM / ADDRESS mentions drawn from the
// benchmark lexicons.
std::vector<SpanAnnotation> run_ner_gazetteer(std::string_view text,
                                              const DetectorConfig& cfg);

// Keyword-window heuristic for MEDICAL / CONTEXT_SENSITIVE phrases: lexicon
// phrases are flagged when a trigger occurs inside the window; strong triggers
// additionally capture a short trailing snippet. Pluggable by contract: any
// implementation with this signature may substitute.
std::vector<SpanAnnotation> run_context_judge(std::string_view text,
                                              const DetectorConfig& cfg);

// OCR-robust channel for image-derived prompts: folds digit/letter confusions
// and re-runs the structured patterns, emitting only spans the plain rule pass
// did not already produce.
std::vector<SpanAnnotation> run_visual_channel(std::string_view text,
                                               const DetectorConfig& cfg);

// Longest span wins; ties broken by higher confidence, then leftmost, then
// category enum order. Output is sorted by start and overlap-free.
std::vector<SpanAnnotation> resolve_overlaps(std::vector<SpanAnnotation> candidates);

// Full Algorithm-1 pipeline: normalize, run the layered recognizers (plus the
// visual channel for OCR-modality prompts), resolve overlaps on the candidate
// pool, then retain spans with confidence >= tau or a high-risk category.
// Resolution before thresholding keeps the retained set monotone in tau.
// Throws std::invalid_argument when tau is outside [0, 1].
Annotation extract_spans(std::string_view raw_text, const DetectorConfig& cfg,
                         bool ocr_modality = false,
                         const std::string& prompt_id = "");

// Self-contained naive de-identification detector used by the generic
// baseline: basic email/number patterns plus a capitalized-bigram name
// heuristic, no gazetteer, no contextual judgment, no OCR channel.
std::vector<SpanAnnotation> detect_generic(std::string_view text);

}  // namespace promptveil
