#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "promptveil/types.hpp"

namespace promptveil {

enum class Boundary : uint8_t {
    INGRESS = 0,
    RETRIEVAL,
    MEMORY,
    PLANNING,
    TOOL_EXEC,
    LOGGING,
};
const char* to_string(Boundary b);

// NONE authorizes nothing; LATE_BOUNDARY authorizes TOOL_EXEC only; EARLY
// authorizes MEMORY, PLANNING and TOOL_EXEC.
enum class RestorationPolicy : uint8_t { NONE = 0, LATE_BOUNDARY, EARLY };
const char* to_string(RestorationPolicy p);
bool parse_restoration_policy(std::string_view name, RestorationPolicy& out);

struct AuthorizationContext {
    std::string session_id;
    Boundary boundary = Boundary::TOOL_EXEC;
    std::string credential;
    RestorationPolicy policy = RestorationPolicy::NONE;
};

enum class AuditOutcome : uint8_t { RESTORED = 0, DENIED, LEAKED };
const char* to_string(AuditOutcome o);

struct AuditEvent {
    uint64_t tick = 0;
    std::string session_id;
    std::string token;
    Boundary boundary = Boundary::TOOL_EXEC;
    AuditOutcome outcome = AuditOutcome::DENIED;
};

struct VaultEntry {
    std::string token;
    std::string original;
    PrivacyCategory category = PrivacyCategory::PERSON;
    std::string session_id;
    uint64_t created_tick = 0;
    bool expired = false;
};

struct RestoreResult {
    std::string text;
    size_t restored = 0;
    size_t denied = 0;
};

// In-memory mapping table with an append-only audit log. Mutations are
// serialized behind one mutex; HSM/TEE key handling is simulated as a
// per-session credential check only.
class Vault {
public:
    // Opens a session and returns its credential. Session ids are caller
    // supplied so episode runs stay deterministic.
    std::string open_session(const std::string& session_id, uint64_t token_seed);

    bool session_open(const std::string& session_id) const;
    std::string credential_for(const std::string& session_id) const;

    // Persists original under a fresh token; the same (original, session)
    // pair returns the existing token. Throws if the session is closed.
    std::string store(const std::string& original, PrivacyCategory category,
                      const std::string& session_id);

    bool authorize(const AuthorizationContext& ctx) const;

    // Algorithm-3 semantics: unauthorized calls return the text unchanged and
    // emit one DENIED event per vault-token occurrence; authorized calls
    // substitute originals and emit RESTORED events. Unknown token shapes are
    // left verbatim with no event.
    RestoreResult restore_entities(const std::string& text,
                                   const AuthorizationContext& ctx);

    // Marks every entry of the session expired; returns how many flipped.
    size_t expire_session(const std::string& session_id);

    // Simulator-observed exposure of a protected value at an unauthorized
    // boundary. The vault only records the event; detection lives upstream.
    void record_leak(const std::string& session_id, const std::string& token,
                     Boundary boundary);

    std::optional<VaultEntry> lookup(const std::string& token) const;
    const std::vector<AuditEvent>& audit_log() const { return audit_; }
    size_t audit_count(AuditOutcome outcome) const;

    // One event per line: tick, session, token, boundary, outcome.
    std::string export_audit() const;
    void save_snapshot(const std::string& path) const;

private:
    std::string fresh_token_locked(const std::string& session_id);
    void append_audit_locked(const std::string& session_id, const std::string& token,
                             Boundary boundary, AuditOutcome outcome);

    mutable std::mutex mu_;
    uint64_t tick_ = 0;
    std::map<std::string, VaultEntry> entries_;                  // token -> entry
    std::map<std::string, std::string> credentials_;             // session -> cred
    std::map<std::string, uint64_t> token_rng_;                  // session -> state
    std::map<std::string, std::map<std::string, std::string>> by_value_;
    std::vector<AuditEvent> audit_;
};

// Scans text for well-formed vault token occurrences ("[TOKEN_" + 5 hex + "]").
std::vector<std::pair<size_t, std::string>> find_token_occurrences(
    std::string_view text);

}  // namespace promptveil
