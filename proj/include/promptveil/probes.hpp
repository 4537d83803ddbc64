#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "promptveil/benchmark.hpp"

namespace promptveil {

enum class ProbeFamily : uint8_t {
    HOMOGLYPH = 0,
    PARAPHRASE,
    MIXED_LANGUAGE,
    RESTORATION_TRIGGER,
};
const char* to_string(ProbeFamily f);
bool parse_probe_family(std::string_view name, ProbeFamily& out);

struct Probe {
    std::string id;
    std::string base_prompt_id;
    std::string text;
    std::vector<GoldSpan> gold;           // gold spans in probe coordinates
    std::vector<size_t> target_indices;   // attacked gold spans
    std::string transformation;           // recorded derivation
};

struct ProbeSet {
    ProbeFamily family = ProbeFamily::HOMOGLYPH;
    uint64_t seed = 0;
    std::vector<Probe> probes;
    std::vector<Probe> clean_controls;  // untransformed counterparts
};

// Deterministic probe derivation from the manifest:
//  HOMOGLYPH substitutes shipped confusables inside structured gold spans,
//  PARAPHRASE swaps context-cue words around contextual spans for neutral
//  synonyms (gold surfaces preserved), MIXED_LANGUAGE inserts bilingual cue
//  tokens next to spans, RESTORATION_TRIGGER appends a reveal-instruction
//  suffix with gold spans unchanged.
ProbeSet generate_probes(ProbeFamily family, uint64_t seed,
                         const BenchmarkManifest& manifest);

}  // namespace promptveil
