#pragma once

#include <array>
#include <set>
#include <string>

#include "promptveil/types.hpp"

namespace promptveil {

// Coarse category classes indexing the routing score tables.
enum class CategoryClass : uint8_t { STRUCTURED = 0, NAMELIKE, LOCATION, CONTEXTUAL, VISUAL };
constexpr int kClassCount = 5;

CategoryClass category_class(PrivacyCategory c);
const char* to_string(CategoryClass c);

enum class ProfileName : uint8_t { LENIENT = 0, BALANCED, STRICT };
const char* to_string(ProfileName p);
bool parse_profile(std::string_view name, ProfileName& out);

// Per-span routing state derived from the span and task metadata.
struct RoutingState {
    PrivacyCategory category = PrivacyCategory::PERSON;
    double confidence = 1.0;
    RiskTier tier = RiskTier::LOW;
    bool exact_value_required = false;   // q
    bool restoration_authorized = false; // a
    bool latency_sensitive = false;      // l
};

// Integer score tables (0..4) behind the rule-instantiated loss terms.
struct ScoreTables {
    // direct_exposure[mode][class], +high_tier_bump when tier is HIGH (capped at 4)
    std::array<std::array<int, kClassCount>, 3> direct_exposure;
    int high_tier_bump = 1;
    std::array<int, 3> context_leakage;          // per mode
    int restoration_surface_symbolic = 2;        // SYMBOLIC with a=true, else 0
    int exact_value_blocked = 4;                 // PLACEHOLDER/ABSTRACT with q=true
    int exact_value_unrestorable = 3;            // SYMBOLIC with q=true, a=false
    std::array<std::array<int, kClassCount>, 3> semantic_drift;
    std::array<int, 3> latency_penalty;          // per mode when l=true

    static ScoreTables defaults();
};

// Named deployment profile: threshold plus routing coefficients.
struct PolicyProfile {
    ProfileName name = ProfileName::BALANCED;
    double tau = 0.55;
    std::array<double, 3> alpha = {1.0, 1.0, 1.0};  // exposure/leakage/surface
    std::array<double, 3> beta = {1.0, 1.0, 1.0};   // exact/drift/latency
    double gamma = 1.0;   // propagation weight (reporting)
    double lambda = 1.0;  // utility weight in the selector
    std::set<PrivacyCategory> high_risk;
    ScoreTables tables = ScoreTables::defaults();

    static PolicyProfile named(ProfileName name);
    static PolicyProfile from_json_file(const std::string& path,
                                        const std::string& profile_name);
};

double privacy_loss(SanitizationMode mode, const RoutingState& state,
                    const PolicyProfile& profile);
double utility_loss(SanitizationMode mode, const RoutingState& state,
                    const PolicyProfile& profile);

// argmin over modes of privacy + lambda * utility; exact ties resolved by the
// fixed precedence PLACEHOLDER > SYMBOLIC > ABSTRACT.
SanitizationMode select_mode(const RoutingState& state, const PolicyProfile& profile);

// Direct-exposure risk of the mode choice itself, used by the profile
// monotonicity property: PLACEHOLDER and SYMBOLIC fully suppress the surface.
int mode_exposure_risk(SanitizationMode mode, const RoutingState& state,
                       const ScoreTables& tables);

}  // namespace promptveil
