#include <doctest.h>

#include <sstream>

#include "promptveil/vault.hpp"

using namespace promptveil;

namespace {

AuthorizationContext ctx_for(Vault& vault, const std::string& session,
                             Boundary boundary, RestorationPolicy policy,
                             bool valid_credential = true) {
    AuthorizationContext ctx;
    ctx.session_id = session;
    ctx.boundary = boundary;
    ctx.credential = valid_credential ? vault.credential_for(session) : "bogus";
    ctx.policy = policy;
    return ctx;
}

}  // namespace

TEST_CASE("store deduplicates per (original, session)") {
    Vault vault;
    vault.open_session("s1", 1);
    auto t1 = vault.store("NZ3812745", PrivacyCategory::NATIONAL_ID, "s1");
    auto t2 = vault.store("NZ3812745", PrivacyCategory::NATIONAL_ID, "s1");
    CHECK(t1 == t2);
    vault.open_session("s2", 2);
    auto t3 = vault.store("NZ3812745", PrivacyCategory::NATIONAL_ID, "s2");
    CHECK(t3 != t1);
}

TEST_CASE("store on a closed session errors") {
    Vault vault;
    CHECK_THROWS_AS(vault.store("x", PrivacyCategory::ACCOUNT, "nope"),
                    std::runtime_error);
}

TEST_CASE("authorization truth table") {
    Vault vault;
    vault.open_session("s1", 1);
    CHECK(vault.authorize(ctx_for(vault, "s1", Boundary::TOOL_EXEC,
                                  RestorationPolicy::LATE_BOUNDARY)));
    CHECK_FALSE(vault.authorize(ctx_for(vault, "s1", Boundary::MEMORY,
                                        RestorationPolicy::LATE_BOUNDARY)));
    CHECK_FALSE(vault.authorize(ctx_for(vault, "s1", Boundary::MEMORY,
                                        RestorationPolicy::EARLY,
                                        /*valid_credential=*/false)));
    CHECK(vault.authorize(ctx_for(vault, "s1", Boundary::MEMORY,
                                  RestorationPolicy::EARLY)));
    CHECK(vault.authorize(ctx_for(vault, "s1", Boundary::PLANNING,
                                  RestorationPolicy::EARLY)));
    CHECK_FALSE(vault.authorize(ctx_for(vault, "s1", Boundary::RETRIEVAL,
                                        RestorationPolicy::EARLY)));
    CHECK_FALSE(vault.authorize(ctx_for(vault, "s1", Boundary::TOOL_EXEC,
                                        RestorationPolicy::NONE)));
}

TEST_CASE("unauthorized restore is the identity and audits denials") {
    Vault vault;
    vault.open_session("s1", 1);
    auto token = vault.store("secret-value", PrivacyCategory::ACCOUNT, "s1");
    std::string text = "pay " + token + " and again " + token;
    auto res = vault.restore_entities(
        text, ctx_for(vault, "s1", Boundary::MEMORY, RestorationPolicy::LATE_BOUNDARY));
    CHECK(res.text == text);
    CHECK(res.restored == 0);
    CHECK(res.denied == 2);
    CHECK(vault.audit_count(AuditOutcome::DENIED) == 2);
}

TEST_CASE("authorized restore substitutes originals and audits restores") {
    Vault vault;
    vault.open_session("s1", 1);
    auto token = vault.store("secret-value", PrivacyCategory::ACCOUNT, "s1");
    auto res = vault.restore_entities(
        "pay " + token + " today",
        ctx_for(vault, "s1", Boundary::TOOL_EXEC, RestorationPolicy::LATE_BOUNDARY));
    CHECK(res.text == "pay secret-value today");
    CHECK(res.restored == 1);
    CHECK(vault.audit_count(AuditOutcome::RESTORED) == 1);
}

TEST_CASE("restore without tokens is the identity with no events") {
    Vault vault;
    vault.open_session("s1", 1);
    auto res = vault.restore_entities(
        "no tokens at all",
        ctx_for(vault, "s1", Boundary::TOOL_EXEC, RestorationPolicy::LATE_BOUNDARY));
    CHECK(res.text == "no tokens at all");
    CHECK(vault.audit_log().empty());
}

TEST_CASE("unknown token shapes are left verbatim without events") {
    Vault vault;
    vault.open_session("s1", 1);
    auto res = vault.restore_entities(
        "mystery [TOKEN_ab12f] stays",
        ctx_for(vault, "s1", Boundary::TOOL_EXEC, RestorationPolicy::LATE_BOUNDARY));
    CHECK(res.text == "mystery [TOKEN_ab12f] stays");
    CHECK(vault.audit_log().empty());
}

TEST_CASE("expiry counts, idempotence, and unknown sessions") {
    Vault vault;
    vault.open_session("s1", 1);
    vault.store("a", PrivacyCategory::ACCOUNT, "s1");
    vault.store("b", PrivacyCategory::ACCOUNT, "s1");
    vault.store("c", PrivacyCategory::ACCOUNT, "s1");
    CHECK(vault.expire_session("s1") == 3);
    CHECK(vault.expire_session("s1") == 0);
    CHECK_THROWS_AS(vault.expire_session("ghost"), std::runtime_error);
}

TEST_CASE("expired entries are never restorable") {
    Vault vault;
    vault.open_session("s1", 1);
    auto token = vault.store("gone", PrivacyCategory::ACCOUNT, "s1");
    vault.expire_session("s1");
    auto res = vault.restore_entities(
        "get " + token,
        ctx_for(vault, "s1", Boundary::TOOL_EXEC, RestorationPolicy::LATE_BOUNDARY));
    CHECK(res.text == "get " + token);
    CHECK(res.restored == 0);
    CHECK(res.denied == 1);
}

TEST_CASE("audit counts reconcile with token occurrences across calls") {
    Vault vault;
    vault.open_session("s1", 1);
    auto t1 = vault.store("v1", PrivacyCategory::ACCOUNT, "s1");
    auto t2 = vault.store("v2", PrivacyCategory::NATIONAL_ID, "s1");
    size_t occurrences = 0;
    auto late = ctx_for(vault, "s1", Boundary::TOOL_EXEC,
                        RestorationPolicy::LATE_BOUNDARY);
    auto memory = ctx_for(vault, "s1", Boundary::MEMORY,
                          RestorationPolicy::LATE_BOUNDARY);
    occurrences += 2;
    vault.restore_entities(t1 + " " + t2, memory);  // both denied
    occurrences += 3;
    vault.restore_entities(t1 + " " + t1 + " " + t2, late);  // all restored
    CHECK(vault.audit_count(AuditOutcome::RESTORED) +
              vault.audit_count(AuditOutcome::DENIED) ==
          occurrences);
}

TEST_CASE("audit export is one ordered line per event with stable fields") {
    Vault vault;
    vault.open_session("s1", 1);
    auto token = vault.store("v", PrivacyCategory::ACCOUNT, "s1");
    vault.restore_entities(token, ctx_for(vault, "s1", Boundary::MEMORY,
                                          RestorationPolicy::LATE_BOUNDARY));
    vault.restore_entities(token, ctx_for(vault, "s1", Boundary::TOOL_EXEC,
                                          RestorationPolicy::LATE_BOUNDARY));
    std::istringstream lines(vault.export_audit());
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].find("DENIED") != std::string::npos);
    CHECK(rows[0].find("MEMORY") != std::string::npos);
    CHECK(rows[1].find("RESTORED") != std::string::npos);
    CHECK(rows[1].find("TOOL_EXEC") != std::string::npos);
    // ticks are totally ordered
    CHECK(rows[0].substr(0, rows[0].find('\t')) <
          rows[1].substr(0, rows[1].find('\t')));
}

TEST_CASE("leak events are recorded on behalf of the simulator") {
    Vault vault;
    vault.open_session("s1", 1);
    vault.record_leak("s1", "[TOKEN_aaaaa]", Boundary::LOGGING);
    CHECK(vault.audit_count(AuditOutcome::LEAKED) == 1);
}
