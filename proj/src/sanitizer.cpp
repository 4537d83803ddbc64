#include "promptveil/sanitizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace promptveil {

namespace {

std::string region_of_address(const SpanAnnotation& span, const Lexicons& lx) {
    // Prefer the component after the last comma, else a known city mention.
    auto pos = span.surface.rfind(", ");
    if (pos != std::string::npos && pos + 2 < span.surface.size())
        return span.surface.substr(pos + 2);
    for (const auto& city : lx.city_names)
        if (span.surface.find(city) != std::string::npos) return city;
    return "the listed region";
}

std::string class_of_phrase(const SpanAnnotation& span, const Lexicons& lx) {
    const auto& pool = span.category == PrivacyCategory::MEDICAL
                           ? lx.medical_phrases
                           : lx.context_phrases;
    for (const auto& cp : pool)
        if (cp.phrase == span.surface) return cp.klass;
    return span.category == PrivacyCategory::MEDICAL ? "clinical" : "contextual";
}

void substitute(std::string& text, const std::string& key, const std::string& value) {
    auto pos = text.find(key);
    if (pos != std::string::npos) text.replace(pos, key.size(), value);
}

}  // namespace

std::string MediationResult::replay(const std::string& normalized_original) const {
    std::string text = normalized_original;
    for (auto it = replacements.rbegin(); it != replacements.rend(); ++it) {
        text.replace(it->span.start, it->span.length(), it->surrogate);
    }
    return text;
}

RoutingState default_routing_state(const SpanAnnotation& span) {
    RoutingState st;
    st.category = span.category;
    st.confidence = span.confidence;
    st.tier = default_risk_tier(span.category);
    return st;
}

std::string typed_placeholder(PrivacyCategory category, size_t index) {
    return "<" + std::string(to_string(category)) + "_" + std::to_string(index) + ">";
}

bool semantic_abstract(const SpanAnnotation& span, const Lexicons& lexicons,
                       std::string& out) {
    std::string tmpl;
    if (!abstraction_template(span.category, tmpl)) return false;
    substitute(tmpl, "{region}", region_of_address(span, lexicons));
    substitute(tmpl, "{class}", class_of_phrase(span, lexicons));
    out = tmpl;
    return true;
}

MediationResult sanitize_prompt(const Annotation& annotation,
                                const PolicyProfile& profile, Vault* vault,
                                const std::string& session_id,
                                const RoutingMetaFn& meta,
                                const SanitizeOptions& options,
                                std::mt19937_64* rng) {
    for (size_t i = 1; i < annotation.spans.size(); ++i) {
        if (annotation.spans[i - 1].end > annotation.spans[i].start)
            throw std::invalid_argument("annotation spans overlap");
    }

    MediationResult result;
    result.prompt_id = annotation.prompt_id;
    result.profile_name = to_string(profile.name);

    // Per-category first-appearance numbering over distinct surfaces.
    std::map<PrivacyCategory, std::map<std::string, size_t>> numbering;

    for (const auto& span : annotation.spans) {
        Replacement rep;
        rep.span = span;

        SanitizationMode mode;
        switch (options.mode_rule) {
            case SanitizeOptions::ModeRule::FORCE_PLACEHOLDER:
                mode = SanitizationMode::PLACEHOLDER;
                break;
            case SanitizeOptions::ModeRule::FORCE_ABSTRACT:
                mode = SanitizationMode::ABSTRACT;
                break;
            case SanitizeOptions::ModeRule::UNIFORM_REDACT:
                mode = SanitizationMode::PLACEHOLDER;
                break;
            case SanitizeOptions::ModeRule::ROUTER:
            default:
                mode = select_mode(meta(span), profile);
                break;
        }

        if (options.mode_rule == SanitizeOptions::ModeRule::UNIFORM_REDACT) {
            rep.mode = SanitizationMode::PLACEHOLDER;
            rep.surrogate = options.uniform_token;
            result.replacements.push_back(std::move(rep));
            continue;
        }

        if (mode == SanitizationMode::ABSTRACT) {
            std::string surrogate;
            if (semantic_abstract(span, *options.lexicons, surrogate)) {
                rep.mode = SanitizationMode::ABSTRACT;
                rep.surrogate = std::move(surrogate);
            } else {
                // No template for this category: conservative fallback.
                result.notes.push_back(std::string("abstract-fallback:") +
                                       to_string(span.category));
                mode = SanitizationMode::PLACEHOLDER;
            }
        }
        if (mode == SanitizationMode::SYMBOLIC) {
            if (!vault)
                throw std::runtime_error(
                    "vault unavailable for SYMBOLIC span in session " + session_id);
            rep.mode = SanitizationMode::SYMBOLIC;
            rep.vault_token = vault->store(span.surface, span.category, session_id);
            rep.surrogate = rep.vault_token;
        }
        if (mode == SanitizationMode::PLACEHOLDER) {
            auto& by_value = numbering[span.category];
            auto it = by_value.find(span.surface);
            if (it == by_value.end())
                it = by_value.emplace(span.surface, by_value.size() + 1).first;
            rep.mode = SanitizationMode::PLACEHOLDER;
            rep.surrogate = typed_placeholder(span.category, it->second);
        }

        if (options.ldp_enabled && rng != nullptr &&
            rep.mode != SanitizationMode::SYMBOLIC) {
            // Effective candidate set: intended plus shipped alternatives.
            std::vector<std::string> omega = surrogate_set(span.category);
            if (std::find(omega.begin(), omega.end(), rep.surrogate) == omega.end())
                omega[0] = rep.surrogate;
            rep.surrogate = randomized_replace(
                rep.surrogate, omega, options.ldp_emission_probability, *rng);
        }

        result.replacements.push_back(std::move(rep));
    }

    // Right-to-left application keeps earlier offsets stable.
    std::string text = annotation.normalized_text;
    for (auto it = result.replacements.rbegin(); it != result.replacements.rend();
         ++it) {
        text.replace(it->span.start, it->span.length(), it->surrogate);
    }
    result.sanitized_text = std::move(text);
    return result;
}

double ldp_epsilon(double p, size_t m) {
    if (m < 2) throw std::domain_error("surrogate set must have at least 2 entries");
    double lower = 1.0 / static_cast<double>(m);
    if (p < lower || p >= 1.0)
        throw std::domain_error("emission probability must lie in [1/m, 1)");
    return std::log(p * static_cast<double>(m - 1) / (1.0 - p));
}

std::string randomized_replace(const std::string& intended,
                               const std::vector<std::string>& omega, double p,
                               std::mt19937_64& rng) {
    if (omega.size() < 2) throw std::invalid_argument("surrogate set too small");
    auto it = std::find(omega.begin(), omega.end(), intended);
    if (it == omega.end())
        throw std::invalid_argument("intended surrogate not in candidate set");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < p) return intended;
    std::uniform_int_distribution<size_t> pick(0, omega.size() - 2);
    size_t idx = pick(rng);
    size_t intended_idx = static_cast<size_t>(it - omega.begin());
    if (idx >= intended_idx) ++idx;
    return omega[idx];
}

double composed_epsilon(const std::vector<double>& epsilons) {
    double total = 0.0;
    for (double e : epsilons) {
        if (e < 0.0) throw std::domain_error("epsilon values must be non-negative");
        total += e;
    }
    return total;
}

}  // namespace promptveil
