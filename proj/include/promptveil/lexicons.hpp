#pragma once

#include <map>
#include <string>
#include <vector>

#include "promptveil/types.hpp"

namespace promptveil {

// Phrase with the coarse class used by semantic abstraction
// ("stage III pancreatic cancer" -> "oncological").
struct ClassedPhrase {
    std::string phrase;
    std::string klass;
};

// Immutable lexicon bundle shared by the detector, the sanitizer, and the
// benchmark generator. Entries are ASCII and already in normalized form.
struct Lexicons {
    std::vector<std::string> person_names;
    std::vector<std::string> org_names;
    std::vector<std::string> street_names;   // gazetteer ADDRESS mentions
    std::vector<std::string> city_names;     // used for address assembly/abstraction
    std::vector<ClassedPhrase> medical_phrases;
    std::vector<ClassedPhrase> context_phrases;
    // Weak triggers gate phrase-lexicon matches inside a window; strong
    // triggers additionally capture a short following snippet.
    std::vector<std::string> weak_triggers;
    std::vector<std::string> strong_triggers;
    // trigger word -> neutral synonym, used by the paraphrase probe family.
    std::map<std::string, std::string> trigger_synonyms;
    std::vector<std::string> mixed_language_cues;

    static const Lexicons& builtin();

    // Loads one category lexicon file: UTF-8, one entry per line, '#' comments.
    // For classed files each line is "phrase|class".
    static std::vector<std::string> load_lines(const std::string& path);
    static std::vector<ClassedPhrase> load_classed(const std::string& path);
};

// Per-category abstraction template, instantiated with coarse attributes.
// "{class}" is replaced by the phrase class, "{region}" by the address region.
// Categories without a template fall back to typed placeholders.
bool abstraction_template(PrivacyCategory c, std::string& out);

// Surrogate candidate sets used by the optional randomized replacement layer.
const std::vector<std::string>& surrogate_set(PrivacyCategory c);

}  // namespace promptveil
