#include "promptveil/policy.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace promptveil {

CategoryClass category_class(PrivacyCategory c) {
    switch (c) {
        case PrivacyCategory::EMAIL:
        case PrivacyCategory::PHONE:
        case PrivacyCategory::NATIONAL_ID:
        case PrivacyCategory::ACCOUNT:
        case PrivacyCategory::DATE_OF_BIRTH:
        case PrivacyCategory::FINANCIAL_REF:
            return CategoryClass::STRUCTURED;
        case PrivacyCategory::PERSON:
        case PrivacyCategory::ORG_TERM:
            return CategoryClass::NAMELIKE;
        case PrivacyCategory::ADDRESS:
            return CategoryClass::LOCATION;
        case PrivacyCategory::MEDICAL:
        case PrivacyCategory::CONTEXT_SENSITIVE:
            return CategoryClass::CONTEXTUAL;
        case PrivacyCategory::VISUAL_TEXT:
            return CategoryClass::VISUAL;
    }
    return CategoryClass::STRUCTURED;
}

const char* to_string(CategoryClass c) {
    switch (c) {
        case CategoryClass::STRUCTURED: return "STRUCTURED";
        case CategoryClass::NAMELIKE: return "NAMELIKE";
        case CategoryClass::LOCATION: return "LOCATION";
        case CategoryClass::CONTEXTUAL: return "CONTEXTUAL";
        case CategoryClass::VISUAL: return "VISUAL";
    }
    return "STRUCTURED";
}

const char* to_string(ProfileName p) {
    switch (p) {
        case ProfileName::LENIENT: return "LENIENT";
        case ProfileName::BALANCED: return "BALANCED";
        case ProfileName::STRICT: return "STRICT";
    }
    return "BALANCED";
}

bool parse_profile(std::string_view name, ProfileName& out) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    if (upper == "LENIENT") out = ProfileName::LENIENT;
    else if (upper == "BALANCED") out = ProfileName::BALANCED;
    else if (upper == "STRICT") out = ProfileName::STRICT;
    else return false;
    return true;
}

ScoreTables ScoreTables::defaults() {
    ScoreTables t{};
    constexpr int P = 0, A = 1, S = 2;
    // classes: STRUCTURED, NAMELIKE, LOCATION, CONTEXTUAL, VISUAL
    t.direct_exposure[P] = {0, 0, 0, 0, 0};
    t.direct_exposure[A] = {3, 2, 1, 1, 2};
    t.direct_exposure[S] = {0, 0, 0, 0, 0};
    t.high_tier_bump = 1;
    t.context_leakage = {1, 1, 0};  // placeholder leaks type, abstract leaks class
    t.restoration_surface_symbolic = 2;
    t.exact_value_blocked = 4;
    t.exact_value_unrestorable = 3;
    t.semantic_drift[P] = {1, 1, 4, 4, 2};
    t.semantic_drift[A] = {2, 2, 1, 1, 1};
    t.semantic_drift[S] = {3, 3, 4, 4, 3};
    t.latency_penalty = {0, 1, 2};
    return t;
}

PolicyProfile PolicyProfile::named(ProfileName name) {
    PolicyProfile p;
    p.name = name;
    switch (name) {
        case ProfileName::LENIENT:
            p.tau = 0.70;
            p.alpha = {0.6, 0.6, 0.6};
            p.gamma = 0.5;
            p.lambda = 2.0;
            p.high_risk = {PrivacyCategory::NATIONAL_ID, PrivacyCategory::ACCOUNT};
            break;
        case ProfileName::BALANCED:
            p.tau = 0.55;
            p.alpha = {1.0, 1.0, 1.0};
            p.gamma = 1.0;
            p.lambda = 1.0;
            p.high_risk = {PrivacyCategory::NATIONAL_ID, PrivacyCategory::ACCOUNT,
                           PrivacyCategory::DATE_OF_BIRTH,
                           PrivacyCategory::FINANCIAL_REF};
            break;
        case ProfileName::STRICT:
            p.tau = 0.40;
            p.alpha = {1.6, 1.6, 1.2};
            p.gamma = 1.5;
            p.lambda = 0.5;
            p.high_risk = {PrivacyCategory::NATIONAL_ID, PrivacyCategory::ACCOUNT,
                           PrivacyCategory::DATE_OF_BIRTH,
                           PrivacyCategory::FINANCIAL_REF, PrivacyCategory::MEDICAL};
            break;
    }
    return p;
}

namespace {

std::array<std::array<int, kClassCount>, 3> table_from_json(const nlohmann::json& j) {
    std::array<std::array<int, kClassCount>, 3> out{};
    for (int m = 0; m < 3; ++m)
        for (int c = 0; c < kClassCount; ++c) out[m][c] = j.at(m).at(c).get<int>();
    return out;
}

}  // namespace

PolicyProfile PolicyProfile::from_json_file(const std::string& path,
                                            const std::string& profile_name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile config: " + path);
    nlohmann::json root;
    in >> root;
    if (!root.contains(profile_name))
        throw std::runtime_error("profile not found in config: " + profile_name);
    const auto& j = root[profile_name];
    ProfileName name;
    if (!parse_profile(profile_name, name))
        throw std::runtime_error("unknown profile name: " + profile_name);
    PolicyProfile p = PolicyProfile::named(name);
    p.tau = j.value("tau", p.tau);
    if (j.contains("alpha"))
        for (int i = 0; i < 3; ++i) p.alpha[i] = j["alpha"][i].get<double>();
    if (j.contains("beta"))
        for (int i = 0; i < 3; ++i) p.beta[i] = j["beta"][i].get<double>();
    p.gamma = j.value("gamma", p.gamma);
    p.lambda = j.value("lambda", p.lambda);
    if (j.contains("high_risk")) {
        p.high_risk.clear();
        for (const auto& n : j["high_risk"]) {
            PrivacyCategory c;
            if (!parse_category(n.get<std::string>(), c))
                throw std::runtime_error("unknown high_risk category");
            p.high_risk.insert(c);
        }
    }
    if (j.contains("tables")) {
        const auto& tj = j["tables"];
        if (tj.contains("direct_exposure"))
            p.tables.direct_exposure = table_from_json(tj["direct_exposure"]);
        if (tj.contains("semantic_drift"))
            p.tables.semantic_drift = table_from_json(tj["semantic_drift"]);
        if (tj.contains("context_leakage"))
            for (int m = 0; m < 3; ++m)
                p.tables.context_leakage[m] = tj["context_leakage"][m].get<int>();
        p.tables.high_tier_bump = tj.value("high_tier_bump", p.tables.high_tier_bump);
        p.tables.restoration_surface_symbolic =
            tj.value("restoration_surface_symbolic",
                     p.tables.restoration_surface_symbolic);
        p.tables.exact_value_blocked =
            tj.value("exact_value_blocked", p.tables.exact_value_blocked);
        p.tables.exact_value_unrestorable =
            tj.value("exact_value_unrestorable", p.tables.exact_value_unrestorable);
    }
    return p;
}

int mode_exposure_risk(SanitizationMode mode, const RoutingState& state,
                       const ScoreTables& tables) {
    int m = static_cast<int>(mode);
    int c = static_cast<int>(category_class(state.category));
    int risk = tables.direct_exposure[m][c];
    if (risk > 0 && state.tier == RiskTier::HIGH) risk += tables.high_tier_bump;
    return std::min(risk, 4);
}

double privacy_loss(SanitizationMode mode, const RoutingState& state,
                    const PolicyProfile& profile) {
    const ScoreTables& t = profile.tables;
    int m = static_cast<int>(mode);
    double direct = mode_exposure_risk(mode, state, t);
    double leak = t.context_leakage[m];
    double surface = 0.0;
    if (mode == SanitizationMode::SYMBOLIC && state.restoration_authorized)
        surface = t.restoration_surface_symbolic;
    return profile.alpha[0] * direct + profile.alpha[1] * leak +
           profile.alpha[2] * surface;
}

double utility_loss(SanitizationMode mode, const RoutingState& state,
                    const PolicyProfile& profile) {
    const ScoreTables& t = profile.tables;
    int m = static_cast<int>(mode);
    int c = static_cast<int>(category_class(state.category));
    double exact = 0.0;
    if (state.exact_value_required) {
        if (mode == SanitizationMode::SYMBOLIC)
            exact = state.restoration_authorized ? 0 : t.exact_value_unrestorable;
        else
            exact = t.exact_value_blocked;
    }
    double drift = t.semantic_drift[m][c];
    double latency = state.latency_sensitive ? t.latency_penalty[m] : 0;
    return profile.beta[0] * exact + profile.beta[1] * drift +
           profile.beta[2] * latency;
}

SanitizationMode select_mode(const RoutingState& state,
                             const PolicyProfile& profile) {
    // Tie precedence: PLACEHOLDER > SYMBOLIC > ABSTRACT.
    constexpr SanitizationMode order[3] = {SanitizationMode::PLACEHOLDER,
                                           SanitizationMode::SYMBOLIC,
                                           SanitizationMode::ABSTRACT};
    SanitizationMode best = order[0];
    double best_score = 0.0;
    bool first = true;
    for (SanitizationMode m : order) {
        double score = privacy_loss(m, state, profile) +
                       profile.lambda * utility_loss(m, state, profile);
        if (first || score < best_score - 1e-12) {
            best = m;
            best_score = score;
            first = false;
        }
    }
    return best;
}

}  // namespace promptveil
