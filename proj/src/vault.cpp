#include "promptveil/vault.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace promptveil {

namespace {

// splitmix64; the vault only needs a deterministic well-mixed stream.
uint64_t next_rng(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::string hex5(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(5, '0');
    for (int i = 4; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

}  // namespace

const char* to_string(Boundary b) {
    switch (b) {
        case Boundary::INGRESS: return "INGRESS";
        case Boundary::RETRIEVAL: return "RETRIEVAL";
        case Boundary::MEMORY: return "MEMORY";
        case Boundary::PLANNING: return "PLANNING";
        case Boundary::TOOL_EXEC: return "TOOL_EXEC";
        case Boundary::LOGGING: return "LOGGING";
    }
    return "INGRESS";
}

const char* to_string(RestorationPolicy p) {
    switch (p) {
        case RestorationPolicy::NONE: return "NONE";
        case RestorationPolicy::LATE_BOUNDARY: return "LATE";
        case RestorationPolicy::EARLY: return "EARLY";
    }
    return "NONE";
}

bool parse_restoration_policy(std::string_view name, RestorationPolicy& out) {
    if (name == "NONE" || name == "none") out = RestorationPolicy::NONE;
    else if (name == "LATE" || name == "late") out = RestorationPolicy::LATE_BOUNDARY;
    else if (name == "EARLY" || name == "early") out = RestorationPolicy::EARLY;
    else return false;
    return true;
}

const char* to_string(AuditOutcome o) {
    switch (o) {
        case AuditOutcome::RESTORED: return "RESTORED";
        case AuditOutcome::DENIED: return "DENIED";
        case AuditOutcome::LEAKED: return "LEAKED";
    }
    return "DENIED";
}

std::string Vault::open_session(const std::string& session_id, uint64_t token_seed) {
    std::lock_guard<std::mutex> lock(mu_);
    uint64_t cred_state = token_seed ^ 0xA5A5A5A5DEADBEEFull;
    std::string credential = "cred-" + hex5(next_rng(cred_state)) + hex5(next_rng(cred_state));
    credentials_[session_id] = credential;
    token_rng_[session_id] = token_seed;
    return credential;
}

bool Vault::session_open(const std::string& session_id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return credentials_.count(session_id) > 0;
}

std::string Vault::credential_for(const std::string& session_id) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = credentials_.find(session_id);
    return it == credentials_.end() ? std::string() : it->second;
}

std::string Vault::fresh_token_locked(const std::string& session_id) {
    uint64_t& state = token_rng_[session_id];
    // Regenerate on collision; distinct originals get distinct tokens.
    for (;;) {
        std::string token = "[TOKEN_" + hex5(next_rng(state)) + "]";
        if (!entries_.count(token)) return token;
    }
}

void Vault::append_audit_locked(const std::string& session_id,
                                const std::string& token, Boundary boundary,
                                AuditOutcome outcome) {
    audit_.push_back({tick_++, session_id, token, boundary, outcome});
}

std::string Vault::store(const std::string& original, PrivacyCategory category,
                         const std::string& session_id) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!credentials_.count(session_id))
        throw std::runtime_error("vault session is not open: " + session_id);
    auto& session_values = by_value_[session_id];
    auto it = session_values.find(original);
    if (it != session_values.end()) return it->second;
    std::string token = fresh_token_locked(session_id);
    entries_[token] = {token, original, category, session_id, tick_++, false};
    session_values[original] = token;
    return token;
}

bool Vault::authorize(const AuthorizationContext& ctx) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = credentials_.find(ctx.session_id);
    if (it == credentials_.end() || it->second != ctx.credential) return false;
    switch (ctx.policy) {
        case RestorationPolicy::NONE:
            return false;
        case RestorationPolicy::LATE_BOUNDARY:
            return ctx.boundary == Boundary::TOOL_EXEC;
        case RestorationPolicy::EARLY:
            return ctx.boundary == Boundary::MEMORY ||
                   ctx.boundary == Boundary::PLANNING ||
                   ctx.boundary == Boundary::TOOL_EXEC;
    }
    return false;
}

RestoreResult Vault::restore_entities(const std::string& text,
                                      const AuthorizationContext& ctx) {
    bool authorized = authorize(ctx);
    std::lock_guard<std::mutex> lock(mu_);
    RestoreResult result;
    result.text.reserve(text.size());
    size_t cursor = 0;
    for (const auto& [pos, token] : find_token_occurrences(text)) {
        auto it = entries_.find(token);
        bool known = it != entries_.end() && it->second.session_id == ctx.session_id;
        bool restorable = known && !it->second.expired;
        result.text.append(text, cursor, pos - cursor);
        if (known && authorized && restorable) {
            result.text.append(it->second.original);
            ++result.restored;
            append_audit_locked(ctx.session_id, token, ctx.boundary,
                                AuditOutcome::RESTORED);
        } else {
            result.text.append(token);
            if (known) {
                ++result.denied;
                append_audit_locked(ctx.session_id, token, ctx.boundary,
                                    AuditOutcome::DENIED);
            }
        }
        cursor = pos + token.size();
    }
    result.text.append(text, cursor, text.size() - cursor);
    return result;
}

size_t Vault::expire_session(const std::string& session_id) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!credentials_.count(session_id))
        throw std::runtime_error("unknown vault session: " + session_id);
    size_t flipped = 0;
    for (auto& [token, entry] : entries_) {
        if (entry.session_id == session_id && !entry.expired) {
            entry.expired = true;
            ++flipped;
        }
    }
    return flipped;
}

void Vault::record_leak(const std::string& session_id, const std::string& token,
                        Boundary boundary) {
    std::lock_guard<std::mutex> lock(mu_);
    append_audit_locked(session_id, token, boundary, AuditOutcome::LEAKED);
}

std::optional<VaultEntry> Vault::lookup(const std::string& token) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(token);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

size_t Vault::audit_count(AuditOutcome outcome) const {
    std::lock_guard<std::mutex> lock(mu_);
    size_t n = 0;
    for (const auto& e : audit_)
        if (e.outcome == outcome) ++n;
    return n;
}

std::string Vault::export_audit() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::ostringstream out;
    for (const auto& e : audit_) {
        out << e.tick << '\t' << e.session_id << '\t' << e.token << '\t'
            << to_string(e.boundary) << '\t' << to_string(e.outcome) << '\n';
    }
    return out.str();
}

void Vault::save_snapshot(const std::string& path) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write vault snapshot: " + path);
    for (const auto& [token, entry] : entries_) {
        out << token << '\t' << to_string(entry.category) << '\t'
            << entry.session_id << '\t' << entry.created_tick << '\t'
            << (entry.expired ? 1 : 0) << '\t' << entry.original << '\n';
    }
}

std::vector<std::pair<size_t, std::string>> find_token_occurrences(
    std::string_view text) {
    std::vector<std::pair<size_t, std::string>> out;
    static const std::string prefix = "[TOKEN_";
    size_t pos = 0;
    while ((pos = text.find(prefix, pos)) != std::string_view::npos) {
        size_t body = pos + prefix.size();
        if (body + 6 <= text.size() && text[body + 5] == ']') {
            bool hex = true;
            for (size_t i = 0; i < 5; ++i) {
                char c = text[body + i];
                if (!std::isxdigit(static_cast<unsigned char>(c)) ||
                    std::isupper(static_cast<unsigned char>(c)))
                    hex = false;
            }
            if (hex) {
                out.emplace_back(pos, std::string(text.substr(pos, prefix.size() + 6)));
                pos = body + 6;
                continue;
            }
        }
        pos += 1;
    }
    return out;
}

}  // namespace promptveil
