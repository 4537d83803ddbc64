#pragma once

#include <map>
#include <string>
#include <vector>

#include "promptveil/benchmark.hpp"
#include "promptveil/sanitizer.hpp"
#include "promptveil/vault.hpp"

namespace promptveil {

// Per-episode record of what each boundary released and which gold spans
// stayed readable there. Under NONE/LATE restoration the exposed sets are
// nested along retrieval -> memory -> tool.
struct StageTrace {
    std::string prompt_id;
    std::map<Boundary, std::string> released;
    std::map<Boundary, std::vector<size_t>> exposed;  // gold span indices
    double spe_retrieval = 0.0;
    double spe_memory = 0.0;
    double spe_tool = 0.0;
    size_t gold_count = 0;
    size_t restored_events = 0;
    size_t denied_events = 0;
    size_t leaked_events = 0;
    size_t protected_spans = 0;   // vault-backed spans in this episode
    size_t tokens_at_tool = 0;    // token occurrences reaching the tool args
    std::string tool_args;        // released argument string (surrogates)
    std::string restored_args;    // execution record on the authorized channel
};

struct TaskOutcome {
    std::vector<std::pair<std::string, bool>> slots;  // key -> satisfied
    double slot_score = 1.0;  // satisfied fraction, 1.0 when no slots
    bool success = false;
    bool reached_execution = true;
    bool agent_binary = false;  // tool-oriented episodes use exact agreement
};

struct EdgeRiskModel {
    std::map<std::string, double> weights;  // edge name -> w_e >= 0
    static EdgeRiskModel uniform(double w = 1.0);
};

// Runs the six-node boundary pipeline (ingress, retrieval, memory, planning,
// tool, logging taps) over one mediated prompt. Raw baselines pass an
// identity mediation. Restoration attempts are audited through the vault;
// LEAKED events fire when a vault-protected original is readable at a
// boundary the active policy does not authorize.
std::pair<StageTrace, TaskOutcome> run_episode(const PromptRecord& prompt,
                                               const MediationResult& mediation,
                                               RestorationPolicy policy,
                                               Vault& vault,
                                               const std::string& session_id);

// Identity mediation for the no-protection baseline.
MediationResult raw_passthrough(const PromptRecord& prompt);

// Deterministic slot oracle over released/mediated content.
TaskOutcome task_oracle(const PromptRecord& prompt, const MediationResult& mediation,
                        const StageTrace& trace);

// SPE_k = |E_k| / |gold|. Throws std::domain_error when gold_count == 0;
// zero-span prompts are excluded upstream, mirroring the PER convention.
std::vector<double> compute_stage_spe(const StageTrace& trace, size_t gold_count);

// Sum over edges of w_e * q_e where q_e = 1 iff any raw gold surface crossed
// the edge in this trace.
double propagation_risk(const StageTrace& trace, const PromptRecord& prompt,
                        const EdgeRiskModel& model);

const std::vector<std::string>& pipeline_edges();

}  // namespace promptveil
