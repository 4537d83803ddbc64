#include "promptveil/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "promptveil/normalize.hpp"

#include <nlohmann/json.hpp>

namespace promptveil {

namespace {

struct RulePattern {
    PrivacyCategory category;
    std::regex re;
};

const std::vector<RulePattern>& rule_patterns() {
    static const std::vector<RulePattern> patterns = [] {
        std::vector<RulePattern> p;
        p.push_back({PrivacyCategory::EMAIL,
                     std::regex(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})")});
        p.push_back({PrivacyCategory::PHONE,
                     std::regex(R"((\+64[ -]\d{1,2}[ -]\d{3}[ -]\d{4})|(\b0\d{1,2}-\d{3}-\d{4}\b))")});
        p.push_back({PrivacyCategory::ACCOUNT,
                     std::regex(R"(\b\d{4}-\d{4}-\d{4}-\d{4}\b)")});
        p.push_back({PrivacyCategory::NATIONAL_ID,
                     std::regex(R"(\b[A-Z]{2}\d{7}\b)")});
        p.push_back({PrivacyCategory::DATE_OF_BIRTH,
                     std::regex(
                         R"(\b\d{1,2} (January|February|March|April|May|June|July|August|September|October|November|December) \d{4}\b)")});
        p.push_back({PrivacyCategory::FINANCIAL_REF,
                     std::regex(R"(\b(INV|PO|TXN|REF)-\d{3,5}-\d{2,4}\b)")});
        p.push_back({PrivacyCategory::ADDRESS,
                     std::regex(
                         R"(\b\d{1,4} (?:[A-Z][A-Za-z']+ )+(?:Avenue|Street|Road|Terrace|Lane|Drive|Crescent|Way|Place|Quay|Boulevard|Rise|Pass|Hill)(?:, [A-Z][a-z]+(?: [A-Z][a-z]+)*)?)")});
        return p;
    }();
    return patterns;
}

bool word_boundary_before(std::string_view text, size_t pos) {
    if (pos == 0) return true;
    unsigned char c = text[pos - 1];
    return !std::isalnum(c);
}

bool word_boundary_after(std::string_view text, size_t pos) {
    if (pos >= text.size()) return true;
    unsigned char c = text[pos];
    return !std::isalnum(c);
}

void gazetteer_scan(std::string_view text, const std::vector<std::string>& entries,
                    PrivacyCategory category, double confidence,
                    std::vector<SpanAnnotation>& out) {
    for (const auto& entry : entries) {
        if (entry.empty()) continue;
        size_t pos = 0;
        while ((pos = text.find(entry, pos)) != std::string_view::npos) {
            if (word_boundary_before(text, pos) &&
                word_boundary_after(text, pos + entry.size())) {
                out.push_back({pos, pos + entry.size(), std::string(entry),
                               category, confidence, SpanSource::NER});
            }
            pos += 1;
        }
    }
}

bool trigger_in_window(std::string_view lower_text, size_t lo, size_t hi,
                       const Lexicons& lx) {
    std::string_view window = lower_text.substr(lo, hi - lo);
    auto has = [&](const std::string& w) {
        size_t pos = window.find(w);
        while (pos != std::string_view::npos) {
            if (word_boundary_before(window, pos) &&
                word_boundary_after(window, pos + w.size()))
                return true;
            pos = window.find(w, pos + 1);
        }
        return false;
    };
    for (const auto& t : lx.weak_triggers)
        if (has(t)) return true;
    for (const auto& t : lx.strong_triggers)
        if (has(t)) return true;
    return false;
}

// OCR confusion canonical form: visually interchangeable digit/letter pairs
// fold toward the digit so structured patterns match corrupted surfaces.
char ocr_canonical(char c) {
    switch (c) {
        case 'O': return '0';
        case 'l': return '1';
        case 'S': return '5';
        case 'B': return '8';
        default: return c;
    }
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Trigger scanning is case-insensitive over the lowered copy; offsets map 1:1.
void context_phrase_pass(std::string_view text, std::string_view lower,
                         const DetectorConfig& cfg, const Lexicons& lx,
                         std::vector<SpanAnnotation>& out) {
    auto scan = [&](const std::vector<ClassedPhrase>& phrases, PrivacyCategory cat) {
        for (const auto& cp : phrases) {
            size_t pos = 0;
            while ((pos = text.find(cp.phrase, pos)) != std::string_view::npos) {
                size_t lo = pos >= cfg.context_window ? pos - cfg.context_window : 0;
                size_t hi = std::min(text.size(),
                                     pos + cp.phrase.size() + cfg.context_window);
                if (trigger_in_window(lower, lo, hi, lx)) {
                    out.push_back({pos, pos + cp.phrase.size(), cp.phrase, cat,
                                   cfg.context_confidence, SpanSource::CONTEXT});
                }
                pos += 1;
            }
        }
    };
    scan(lx.medical_phrases, PrivacyCategory::MEDICAL);
    scan(lx.context_phrases, PrivacyCategory::CONTEXT_SENSITIVE);
}

void strong_capture_pass(std::string_view text, std::string_view lower,
                         const DetectorConfig& cfg, const Lexicons& lx,
                         std::vector<SpanAnnotation>& out) {
    for (const auto& trig : lx.strong_triggers) {
        size_t pos = 0;
        while ((pos = lower.find(trig, pos)) != std::string_view::npos) {
            if (!word_boundary_before(text, pos) ||
                !word_boundary_after(text, pos + trig.size())) {
                pos += 1;
                continue;
            }
            // Capture the trigger plus up to capture_words following words,
            // clipped at sentence punctuation and text bounds.
            size_t end = pos + trig.size();
            size_t words = 0;
            size_t cursor = end;
            while (cursor < text.size() && words < cfg.capture_words) {
                if (text[cursor] == '.' || text[cursor] == ';' ||
                    text[cursor] == '!' || text[cursor] == '?' ||
                    text[cursor] == ',')
                    break;
                if (text[cursor] == ' ') {
                    size_t word_end = cursor + 1;
                    while (word_end < text.size() &&
                           !std::isspace(static_cast<unsigned char>(text[word_end])) &&
                           text[word_end] != '.' && text[word_end] != ';' &&
                           text[word_end] != '!' && text[word_end] != '?' &&
                           text[word_end] != ',')
                        ++word_end;
                    if (word_end == cursor + 1) break;
                    end = word_end;
                    ++words;
                    cursor = word_end;
                } else {
                    ++cursor;
                }
            }
            out.push_back({pos, end, std::string(text.substr(pos, end - pos)),
                           PrivacyCategory::CONTEXT_SENSITIVE,
                           cfg.context_confidence, SpanSource::CONTEXT});
            pos += 1;
        }
    }
}

}  // namespace

DetectorConfig DetectorConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open detector config: " + path);
    nlohmann::json j;
    in >> j;
    DetectorConfig cfg;
    cfg.tau = j.value("tau", cfg.tau);
    cfg.rule_confidence = j.value("rule_confidence", cfg.rule_confidence);
    cfg.ner_confidence = j.value("ner_confidence", cfg.ner_confidence);
    cfg.context_confidence = j.value("context_confidence", cfg.context_confidence);
    cfg.visual_confidence = j.value("visual_confidence", cfg.visual_confidence);
    cfg.context_window = j.value("context_window", cfg.context_window);
    cfg.capture_words = j.value("capture_words", cfg.capture_words);
    if (j.contains("high_risk")) {
        for (const auto& name : j["high_risk"]) {
            PrivacyCategory c;
            if (!parse_category(name.get<std::string>(), c))
                throw std::runtime_error("unknown category in high_risk: " +
                                         name.get<std::string>());
            cfg.high_risk.insert(c);
        }
    }
    return cfg;
}

std::vector<SpanAnnotation> run_rule_recognizers(std::string_view text,
                                                 const DetectorConfig& cfg) {
    std::vector<SpanAnnotation> out;
    std::string s(text);
    for (const auto& pat : rule_patterns()) {
        for (auto it = std::sregex_iterator(s.begin(), s.end(), pat.re);
             it != std::sregex_iterator(); ++it) {
            size_t start = static_cast<size_t>(it->position());
            size_t len = static_cast<size_t>(it->length());
            out.push_back({start, start + len, it->str(), pat.category,
                           cfg.rule_confidence, SpanSource::RULE});
        }
    }
    return out;
}

std::vector<SpanAnnotation> run_ner_gazetteer(std::string_view text,
                                              const DetectorConfig& cfg) {
    const Lexicons& lx = *cfg.lexicons;
    std::vector<SpanAnnotation> out;
    gazetteer_scan(text, lx.person_names, PrivacyCategory::PERSON,
                   cfg.ner_confidence, out);
    gazetteer_scan(text, lx.org_names, PrivacyCategory::ORG_TERM,
                   cfg.ner_confidence, out);
    gazetteer_scan(text, lx.street_names, PrivacyCategory::ADDRESS,
                   cfg.ner_confidence, out);
    return out;
}

std::vector<SpanAnnotation> run_context_judge(std::string_view text,
                                              const DetectorConfig& cfg) {
    const Lexicons& lx = *cfg.lexicons;
    std::vector<SpanAnnotation> out;
    std::string lower = ascii_lower(text);
    context_phrase_pass(text, lower, cfg, lx, out);
    strong_capture_pass(text, lower, cfg, lx, out);
    if (cfg.second_context_pass) {
        // Aggressive-contextual profile: rerun the phrase pass with a doubled
        // window and merge duplicates; this is the latency differentiator.
        DetectorConfig wide = cfg;
        wide.context_window = cfg.context_window * 2;
        wide.second_context_pass = false;
        std::vector<SpanAnnotation> extra;
        context_phrase_pass(text, lower, wide, lx, extra);
        for (auto& sp : extra) {
            bool dup = false;
            for (const auto& have : out)
                if (have.start == sp.start && have.end == sp.end &&
                    have.category == sp.category)
                    dup = true;
            if (!dup) out.push_back(sp);
        }
    }
    return out;
}

std::vector<SpanAnnotation> run_visual_channel(std::string_view text,
                                               const DetectorConfig& cfg) {
    std::string canonical(text);
    for (auto& c : canonical) c = ocr_canonical(c);
    DetectorConfig visual_cfg = cfg;
    auto canon_matches = run_rule_recognizers(canonical, visual_cfg);
    auto plain_matches = run_rule_recognizers(text, cfg);
    std::vector<SpanAnnotation> out;
    for (auto& m : canon_matches) {
        bool already = false;
        for (const auto& p : plain_matches)
            if (p.start == m.start && p.end == m.end && p.category == m.category)
                already = true;
        if (already) continue;
        // Report the span as it appears in the real text, not the folded copy.
        m.surface = std::string(text.substr(m.start, m.end - m.start));
        m.source = SpanSource::VISUAL;
        m.confidence = cfg.visual_confidence;
        out.push_back(m);
    }
    return out;
}

std::vector<SpanAnnotation> resolve_overlaps(std::vector<SpanAnnotation> candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const SpanAnnotation& a, const SpanAnnotation& b) {
                         if (a.length() != b.length()) return a.length() > b.length();
                         if (a.confidence != b.confidence)
                             return a.confidence > b.confidence;
                         if (a.start != b.start) return a.start < b.start;
                         return a.category < b.category;
                     });
    std::vector<SpanAnnotation> accepted;
    for (const auto& cand : candidates) {
        bool clash = false;
        for (const auto& have : accepted) {
            if (cand.overlaps(have)) {
                clash = true;
                break;
            }
        }
        // Exact duplicates (same range and category) collapse to the winner.
        if (!clash) accepted.push_back(cand);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const SpanAnnotation& a, const SpanAnnotation& b) {
                  return a.start < b.start;
              });
    return accepted;
}

Annotation extract_spans(std::string_view raw_text, const DetectorConfig& cfg,
                         bool ocr_modality, const std::string& prompt_id) {
    if (cfg.tau < 0.0 || cfg.tau > 1.0)
        throw std::invalid_argument("detection threshold must lie in [0, 1]");
    Annotation ann;
    ann.prompt_id = prompt_id;
    ann.normalized_text = normalize_surface(raw_text);
    std::string_view text = ann.normalized_text;

    std::vector<SpanAnnotation> pool = run_rule_recognizers(text, cfg);
    auto append = [&pool](std::vector<SpanAnnotation> more) {
        pool.insert(pool.end(), std::make_move_iterator(more.begin()),
                    std::make_move_iterator(more.end()));
    };
    append(run_ner_gazetteer(text, cfg));
    append(run_context_judge(text, cfg));
    if (ocr_modality) append(run_visual_channel(text, cfg));

    auto resolved = resolve_overlaps(std::move(pool));
    for (auto& sp : resolved) {
        if (sp.confidence >= cfg.tau || cfg.high_risk.count(sp.category))
            ann.spans.push_back(std::move(sp));
    }
    return ann;
}

std::vector<SpanAnnotation> detect_generic(std::string_view text) {
    static const std::regex kEmail(
        R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})");
    static const std::regex kDigitRun(R"(\b\d[0-9 -]{7,}\d\b)");
    static const std::regex kCapBigram(R"(\b[A-Z][a-z]+ [A-Z][a-z]+\b)");
    std::vector<SpanAnnotation> out;
    std::string s(text);
    auto collect = [&](const std::regex& re, PrivacyCategory cat) {
        for (auto it = std::sregex_iterator(s.begin(), s.end(), re);
             it != std::sregex_iterator(); ++it) {
            size_t start = static_cast<size_t>(it->position());
            out.push_back({start, start + static_cast<size_t>(it->length()),
                           it->str(), cat, 1.0, SpanSource::RULE});
        }
    };
    collect(kEmail, PrivacyCategory::EMAIL);
    collect(kDigitRun, PrivacyCategory::ACCOUNT);
    collect(kCapBigram, PrivacyCategory::PERSON);
    return resolve_overlaps(std::move(out));
}

}  // namespace promptveil
