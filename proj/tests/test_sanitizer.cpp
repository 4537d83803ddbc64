#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "promptveil/extraction.hpp"
#include "promptveil/sanitizer.hpp"

using namespace promptveil;

namespace {

DetectorConfig balanced_cfg() {
    DetectorConfig cfg;
    cfg.tau = 0.55;
    return cfg;
}

MediationResult mediate(const std::string& text, Vault* vault = nullptr,
                        const std::string& session = "s1",
                        SanitizeOptions options = {},
                        const RoutingMetaFn& meta = default_routing_state) {
    auto ann = extract_spans(text, balanced_cfg());
    auto profile = PolicyProfile::named(ProfileName::BALANCED);
    return sanitize_prompt(ann, profile, vault, session, meta, options);
}

}  // namespace

TEST_CASE("typed placeholders are category-indexed") {
    CHECK(typed_placeholder(PrivacyCategory::PERSON, 1) == "<PERSON_1>");
    CHECK(typed_placeholder(PrivacyCategory::ACCOUNT, 1) == "<ACCOUNT_1>");
    CHECK(typed_placeholder(PrivacyCategory::PERSON, 2) == "<PERSON_2>");
}

TEST_CASE("address abstraction keeps only the region") {
    SpanAnnotation span{0, 25, "17 Anzac Avenue, Auckland",
                        PrivacyCategory::ADDRESS, 1.0, SpanSource::RULE};
    std::string out;
    REQUIRE(semantic_abstract(span, Lexicons::builtin(), out));
    CHECK(out == "an address in central Auckland");
}

TEST_CASE("medical abstraction keeps only the condition class") {
    SpanAnnotation span{0, 27, "stage III pancreatic cancer",
                        PrivacyCategory::MEDICAL, 0.6, SpanSource::CONTEXT};
    std::string out;
    REQUIRE(semantic_abstract(span, Lexicons::builtin(), out));
    CHECK(out == "a serious oncological condition");
}

TEST_CASE("categories without templates fall back to placeholders") {
    SpanAnnotation span{0, 5, "dummy", PrivacyCategory::ACCOUNT, 1.0,
                        SpanSource::RULE};
    std::string out;
    CHECK_FALSE(semantic_abstract(span, Lexicons::builtin(), out));

    Annotation ann;
    ann.normalized_text = "pay 4012-0034-5566-7788 now";
    ann.spans = {{4, 23, "4012-0034-5566-7788", PrivacyCategory::ACCOUNT, 1.0,
                  SpanSource::RULE}};
    SanitizeOptions options;
    options.mode_rule = SanitizeOptions::ModeRule::FORCE_ABSTRACT;
    auto res = sanitize_prompt(ann, PolicyProfile::named(ProfileName::BALANCED),
                               nullptr, "s1", default_routing_state, options);
    REQUIRE(res.replacements.size() == 1);
    CHECK(res.replacements[0].mode == SanitizationMode::PLACEHOLDER);
    CHECK(res.replacements[0].surrogate == "<ACCOUNT_1>");
    REQUIRE(res.notes.size() == 1);
    CHECK(res.notes[0] == "abstract-fallback:ACCOUNT");
}

TEST_CASE("concept example sanitizes to typed placeholders") {
    auto res = mediate(
        "Send the contract update to Sarah Chen at sarah.chen@vendor.example.");
    CHECK(res.sanitized_text ==
          "Send the contract update to <PERSON_1> at <EMAIL_1>.");
}

TEST_CASE("zero-span annotation is an identity mediation") {
    auto res = mediate("nothing sensitive in here");
    CHECK(res.sanitized_text == "nothing sensitive in here");
    CHECK(res.replacements.empty());
}

TEST_CASE("re-sanitizing mediated text adds no replacements") {
    Vault vault;
    vault.open_session("s1", 41);
    std::string text =
        "Send details for Sarah Chen, 17 Anzac Avenue, Auckland, account "
        "4012-0034-5566-7788, patient diagnosed with stage III pancreatic cancer.";
    auto first = mediate(text, &vault);
    auto second = mediate(first.sanitized_text, &vault, "s1");
    CHECK(second.replacements.empty());
    CHECK(second.sanitized_text == first.sanitized_text);
}

TEST_CASE("ledger replay reproduces the sanitized text byte for byte") {
    Vault vault;
    vault.open_session("s1", 7);
    std::string text =
        "Priya Natarajan (NZ3812745) of Harbor Analytics, reach at "
        "priya@harbor.example or 021-555-0147, born 12 March 1985.";
    auto ann = extract_spans(text, balanced_cfg());
    auto res = sanitize_prompt(ann, PolicyProfile::named(ProfileName::BALANCED),
                               &vault, "s1");
    CHECK(res.replay(ann.normalized_text) == res.sanitized_text);
}

TEST_CASE("replaced surfaces do not survive at their locations") {
    std::string text =
        "Contact Sarah Chen and Priya Natarajan about account 4012-0034-5566-7788.";
    auto res = mediate(text);
    REQUIRE(!res.replacements.empty());
    for (const auto& rep : res.replacements) {
        CHECK(rep.surrogate != rep.span.surface);
        CHECK(res.sanitized_text.find(rep.span.surface) == std::string::npos);
    }
}

TEST_CASE("placeholder numbering follows first appearance per category") {
    std::string text =
        "Sarah Chen met Priya Natarajan; later Sarah Chen emailed "
        "s.chen@a.example and p.n@b.example.";
    auto res = mediate(text);
    std::map<std::string, std::string> surrogate_by_value;
    std::set<std::string> surrogates_seen;
    for (const auto& rep : res.replacements) {
        auto it = surrogate_by_value.find(rep.span.surface);
        if (it != surrogate_by_value.end()) {
            CHECK(it->second == rep.surrogate);  // repeated value, same index
        } else {
            // distinct value, fresh index
            CHECK(surrogates_seen.count(rep.surrogate) == 0);
            surrogate_by_value[rep.span.surface] = rep.surrogate;
            surrogates_seen.insert(rep.surrogate);
        }
    }
    CHECK(surrogate_by_value.at("Sarah Chen") == "<PERSON_1>");
    CHECK(surrogate_by_value.at("Priya Natarajan") == "<PERSON_2>");
}

TEST_CASE("symbolic tokens are 5-hex, session-consistent, and collision-free") {
    Vault vault;
    vault.open_session("s1", 99);
    Annotation ann;
    ann.normalized_text = "ids NZ3812745 then NZ3812745 then AB1234567";
    ann.spans = {
        {4, 13, "NZ3812745", PrivacyCategory::NATIONAL_ID, 1.0, SpanSource::RULE},
        {19, 28, "NZ3812745", PrivacyCategory::NATIONAL_ID, 1.0, SpanSource::RULE},
        {34, 43, "AB1234567", PrivacyCategory::NATIONAL_ID, 1.0, SpanSource::RULE},
    };
    RoutingMetaFn symbolic_meta = [](const SpanAnnotation& span) {
        RoutingState st = default_routing_state(span);
        st.exact_value_required = true;
        st.restoration_authorized = true;
        return st;
    };
    auto res = sanitize_prompt(ann, PolicyProfile::named(ProfileName::BALANCED),
                               &vault, "s1", symbolic_meta);
    REQUIRE(res.replacements.size() == 3);
    for (const auto& rep : res.replacements) {
        CHECK(rep.mode == SanitizationMode::SYMBOLIC);
        REQUIRE(rep.surrogate.size() == 13);  // [TOKEN_ + 5 hex + ]
        CHECK(rep.surrogate.substr(0, 7) == "[TOKEN_");
        CHECK(rep.surrogate.back() == ']');
        for (size_t i = 7; i < 12; ++i) {
            char c = rep.surrogate[i];
            CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
        }
    }
    CHECK(res.replacements[0].surrogate == res.replacements[1].surrogate);
    CHECK(res.replacements[0].surrogate != res.replacements[2].surrogate);
}

TEST_CASE("distinct originals receive distinct tokens under many draws") {
    Vault vault;
    vault.open_session("s1", 3);
    std::set<std::string> tokens;
    for (int i = 0; i < 2000; ++i) {
        tokens.insert(vault.store("value-" + std::to_string(i),
                                  PrivacyCategory::ACCOUNT, "s1"));
    }
    CHECK(tokens.size() == 2000);
}

TEST_CASE("symbolic span without a vault signals a session error") {
    Annotation ann;
    ann.normalized_text = "id NZ3812745";
    ann.spans = {{3, 12, "NZ3812745", PrivacyCategory::NATIONAL_ID, 1.0,
                  SpanSource::RULE}};
    RoutingMetaFn symbolic_meta = [](const SpanAnnotation& span) {
        RoutingState st = default_routing_state(span);
        st.exact_value_required = true;
        st.restoration_authorized = true;
        return st;
    };
    CHECK_THROWS_AS(sanitize_prompt(ann, PolicyProfile::named(ProfileName::BALANCED),
                                    nullptr, "s1", symbolic_meta),
                    std::runtime_error);
}

TEST_CASE("ldp epsilon closed forms") {
    CHECK(ldp_epsilon(0.9, 10) == doctest::Approx(std::log(81.0)).epsilon(1e-12));
    CHECK(ldp_epsilon(0.1, 10) == doctest::Approx(0.0));
    CHECK(ldp_epsilon(0.99, 101) == doctest::Approx(std::log(9900.0)).epsilon(1e-12));
}

TEST_CASE("ldp epsilon rejects invalid mechanism parameters") {
    CHECK_THROWS_AS(ldp_epsilon(0.9, 1), std::domain_error);
    CHECK_THROWS_AS(ldp_epsilon(0.05, 10), std::domain_error);
    CHECK_THROWS_AS(ldp_epsilon(1.0, 10), std::domain_error);
}

TEST_CASE("composed epsilon sums sequentially") {
    CHECK(composed_epsilon({4.3944, 4.3944}) == doctest::Approx(8.7888));
    CHECK(composed_epsilon({}) == 0.0);
    CHECK(composed_epsilon({std::log(81.0), std::log(9900.0)}) ==
          doctest::Approx(std::log(81.0 * 9900.0)).epsilon(1e-12));
    CHECK_THROWS_AS(composed_epsilon({-0.1}), std::domain_error);
}

TEST_CASE("randomized replacement emits the intended surrogate in the limit") {
    std::vector<std::string> omega = {"a", "b", "c"};
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i)
        CHECK(randomized_replace("b", omega, 1.0 - 1e-12, rng) == "b");
}

TEST_CASE("randomized replacement validates its candidate set") {
    std::mt19937_64 rng(5);
    CHECK_THROWS_AS(randomized_replace("a", {"a"}, 0.9, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(randomized_replace("zz", {"a", "b"}, 0.9, rng),
                    std::invalid_argument);
}

TEST_CASE("uniform emission probability spreads over the whole set") {
    std::vector<std::string> omega = {"a", "b", "c", "d"};
    std::mt19937_64 rng(11);
    std::map<std::string, int> counts;
    for (int i = 0; i < 4000; ++i) counts[randomized_replace("a", omega, 0.25, rng)]++;
    for (const auto& [value, count] : counts) CHECK(count > 800);
}

TEST_CASE("ldp layer only touches placeholder and abstract surrogates") {
    Vault vault;
    vault.open_session("s1", 13);
    Annotation ann;
    ann.normalized_text = "Sarah Chen pays with 4012-0034-5566-7788";
    ann.spans = {
        {0, 10, "Sarah Chen", PrivacyCategory::PERSON, 0.85, SpanSource::NER},
        {21, 40, "4012-0034-5566-7788", PrivacyCategory::ACCOUNT, 1.0,
         SpanSource::RULE},
    };
    RoutingMetaFn meta = [](const SpanAnnotation& span) {
        RoutingState st = default_routing_state(span);
        if (span.category == PrivacyCategory::ACCOUNT) {
            st.exact_value_required = true;
            st.restoration_authorized = true;
        }
        return st;
    };
    SanitizeOptions options;
    options.ldp_enabled = true;
    options.ldp_emission_probability = 0.5;
    std::mt19937_64 rng(17);
    auto res = sanitize_prompt(ann, PolicyProfile::named(ProfileName::BALANCED),
                               &vault, "s1", meta, options, &rng);
    REQUIRE(res.replacements.size() == 2);
    CHECK(res.replacements[1].mode == SanitizationMode::SYMBOLIC);
    CHECK(res.replacements[1].surrogate.substr(0, 7) == "[TOKEN_");
}
