#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "promptveil/lexicons.hpp"
#include "promptveil/policy.hpp"
#include "promptveil/types.hpp"
#include "promptveil/vault.hpp"

namespace promptveil {

struct Replacement {
    SpanAnnotation span;
    SanitizationMode mode = SanitizationMode::PLACEHOLDER;
    std::string surrogate;
    std::string vault_token;  // present iff mode == SYMBOLIC
};

struct MediationResult {
    std::string sanitized_text;
    std::vector<Replacement> replacements;  // ordered by span start
    std::string profile_name;
    std::string prompt_id;
    std::vector<std::string> notes;  // e.g. abstraction fallbacks

    // Replays the ledger over the normalized original; must reproduce
    // sanitized_text byte for byte.
    std::string replay(const std::string& normalized_original) const;
};

// Supplies q/a/l/tier per span from task metadata; defaults when absent.
using RoutingMetaFn = std::function<RoutingState(const SpanAnnotation&)>;
RoutingState default_routing_state(const SpanAnnotation& span);

struct SanitizeOptions {
    // Router override used by baseline rosters. FORCE_ABSTRACT applies the
    // abstraction mode wherever a template exists, placeholders elsewhere.
    enum class ModeRule { ROUTER, FORCE_PLACEHOLDER, FORCE_ABSTRACT, UNIFORM_REDACT };
    ModeRule mode_rule = ModeRule::ROUTER;
    std::string uniform_token = "[REDACTED]";
    // Optional randomized replacement layer over placeholder/abstract
    // surrogate choice; never applied to SYMBOLIC (would break restoration).
    bool ldp_enabled = false;
    double ldp_emission_probability = 0.9;
    const Lexicons* lexicons = &Lexicons::builtin();
};

std::string typed_placeholder(PrivacyCategory category, size_t index);

// Category-conditioned abstraction carrying coarse attributes only. Returns
// false when the category has no template (caller falls back to placeholder).
bool semantic_abstract(const SpanAnnotation& span, const Lexicons& lexicons,
                       std::string& out);

// Applies the selected mode per span right-to-left so offsets stay valid.
// SYMBOLIC spans require an open vault session; passing a null vault while a
// span routes SYMBOLIC raises a session error.
MediationResult sanitize_prompt(const Annotation& annotation,
                                const PolicyProfile& profile, Vault* vault,
                                const std::string& session_id,
                                const RoutingMetaFn& meta = default_routing_state,
                                const SanitizeOptions& options = {},
                                std::mt19937_64* rng = nullptr);

// Randomized-response epsilon for emission probability p over a surrogate set
// of size m: log(p * (m - 1) / (1 - p)). Requires m >= 2 and 1/m <= p < 1.
double ldp_epsilon(double p, size_t m);

// Emits `intended` with probability p, otherwise uniform over the remaining
// candidates. `intended` must be a member of omega and |omega| >= 2.
std::string randomized_replace(const std::string& intended,
                               const std::vector<std::string>& omega, double p,
                               std::mt19937_64& rng);

// Sequential composition: sum of the per-span epsilons (all must be >= 0).
double composed_epsilon(const std::vector<double>& epsilons);

}  // namespace promptveil
