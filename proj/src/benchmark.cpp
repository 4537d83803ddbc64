#include "promptveil/benchmark.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "promptveil/lexicons.hpp"
#include "promptveil/normalize.hpp"

#include <nlohmann/json.hpp>

namespace promptveil {

const char* to_string(PromptFamily f) {
    switch (f) {
        case PromptFamily::DIRECT_REQUEST: return "DIRECT_REQUEST";
        case PromptFamily::DOCUMENT: return "DOCUMENT";
        case PromptFamily::RETRIEVAL: return "RETRIEVAL";
        case PromptFamily::TOOL_AGENT: return "TOOL_AGENT";
    }
    return "DIRECT_REQUEST";
}

const char* to_string(PromptSource s) {
    switch (s) {
        case PromptSource::DIALOGUE_TEMPLATE: return "DIALOGUE_TEMPLATE";
        case PromptSource::PUBLIC_TASK: return "PUBLIC_TASK";
        case PromptSource::DOCUMENT_SCENARIO: return "DOCUMENT_SCENARIO";
        case PromptSource::AGENT_TRACE: return "AGENT_TRACE";
    }
    return "DIALOGUE_TEMPLATE";
}

const char* to_string(SlotRequirement r) {
    switch (r) {
        case SlotRequirement::EXACT: return "EXACT";
        case SlotRequirement::VALUE: return "VALUE";
        case SlotRequirement::KEYWORD: return "KEYWORD";
    }
    return "KEYWORD";
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ull * (a + 1) + 0xBF58476D1CE4E5B9ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

constexpr std::array<PrivacyCategory, 8> kPrimaryCategories = {
    PrivacyCategory::PERSON,        PrivacyCategory::EMAIL,
    PrivacyCategory::ADDRESS,       PrivacyCategory::NATIONAL_ID,
    PrivacyCategory::FINANCIAL_REF, PrivacyCategory::MEDICAL,
    PrivacyCategory::ORG_TERM,      PrivacyCategory::CONTEXT_SENSITIVE,
};

struct TemplateDef {
    const char* essential;
    const char* incidental;
    const char* kw_essential;
    const char* kw_incidental;
    bool primary_exact;  // exact-value slot on the primary span (V1..V4)
    bool account_exact;  // extra exact slot on the ACCOUNT span
};

// Markers: {P} {P2} person, {E} email, {PH} phone, {A} {A2} address, {N} id,
// {ACCT} account, {D} date of birth, {F} invoice ref, {M} medical, {C}
// context phrase, {O} organization, {M#1}/{C#1} depth-1 echoes, {M#2}/{C#2}
// depth-2 echoes, {KW:...} tracked keyword region.
const std::array<TemplateDef, 32> kTemplates = {{
    // DIRECT_REQUEST
    {"Draft an email to {P} regarding the revised {KW:procurement request}.",
     "Draft a reusable outline for {KW:procurement updates}; {P} keeps the archive copy.",
     "procurement request", "procurement updates", true, false},
    {"Send the {KW:signed agreement} to {P2} at {E} and confirm receipt today.",
     "Write a vendor {KW:onboarding summary} for {P2}; the old thread lives under {E}.",
     "signed agreement", "onboarding summary", false, false},
    {"Prepare a {KW:delivery confirmation} for {A} and include the courier window.",
     "Outline {KW:courier options} for the metro area; the last drop-off was {A}.",
     "delivery confirmation", "courier options", false, false},
    {"My passport number is {N}. Use it for the {KW:travel approval} form.",
     "Explain the {KW:travel approval} steps; an older form listed {N}.",
     "travel approval", "travel approval", false, false},
    {"File {KW:reimbursement} for invoice {F} and use account {ACCT}.",
     "Describe the {KW:reimbursement workflow}; one archived claim cited invoice {F} and account {ACCT}.",
     "reimbursement", "reimbursement workflow", false, false},
    {"Summarize {KW:treatment options} for a patient with {M}.",
     "List general {KW:wellness resources} for staff; one archived note described {M}.",
     "treatment options", "wellness resources", false, false},
    {"Write a {KW:partnership brief} for {O} based at {A2} covering the delivery milestones.",
     "Draft a generic {KW:partnership checklist}; {O} at {A2} was an earlier collaborator.",
     "partnership brief", "partnership checklist", false, false},
    {"Prepare a memo regarding the {C} for tomorrow's {KW:board session}.",
     "Prepare a standard {KW:board agenda}; one older item covered the {C}.",
     "board session", "board agenda", false, false},
    // DOCUMENT
    {"Review the attached {KW:onboarding file} for {P} and flag missing signatures. Requested by {P2}.",
     "Summarize the onboarding {KW:file layout} for the wiki. Requested by {P2}; {P} owns the source folder.",
     "onboarding file", "file layout", true, false},
    {"Process the attached {KW:contact sheet}: primary mail {E}, backup line {PH}. Requested by {P2}.",
     "Condense the contact sheet conventions for the handbook; sheet owner {P2}, legacy mail {E}, line {PH}. "
     "The confidential {KW:routing checklist} is pinned to the shared channel.",
     "contact sheet", "routing checklist", false, false},
    {"Verify the {KW:tenancy statement} for {A} against the lease schedule. Requested by {P2}.",
     "Explain the tenancy {KW:statement sections}; a sample entry used {A}. Requested by {P2}.",
     "tenancy statement", "statement sections", false, false},
    {"Validate the {KW:identity packet}: passport {N}, date of birth {D}. Requested by {P2}.",
     "Describe the identity {KW:packet checklist}; a sample used passport {N} born {D}. Requested by {P2}.",
     "identity packet", "packet checklist", false, false},
    {"Audit the {KW:expense bundle} for invoice {F}; settlement account {ACCT}, registered office {A2}. Requested by {P2}.",
     "Document the expense {KW:audit procedure}; a past bundle cited invoice {F}, account {ACCT}, office {A2}. Requested by {P2}.",
     "expense bundle", "audit procedure", false, false},
    {"Annotate the {KW:referral letter} for a patient diagnosed with {M}. Requested by {P2} and filed for audit. For the record, {M#1}.",
     "Tidy the referral {KW:letter template} for general reuse. Requested by {P2}; an archived letter noted {M}. For the record, {M#1}.",
     "referral letter", "letter template", false, false},
    {"Compile the {KW:partnership dossier} for {O} with delivery terms. Requested by {P2}.",
     "Compile a reusable template for partner reviews; past partner {O}, curator {P2}. "
     "The confidential {KW:vendor scorecard} is pinned to the shared channel.",
     "partnership dossier", "vendor scorecard", false, false},
    {"Flag clauses affected by the {C} in the attached {KW:internal draft}. Requested by {P2} and filed for review. For the record, {C#1}.",
     "Produce a clause {KW:review walkthrough}. Requested by {P2}; an earlier draft referenced the {C}. For the record, {C#1}.",
     "internal draft", "review walkthrough", false, false},
    // RETRIEVAL
    {"Search the staff directory for {P} and return the {KW:office allocation}.",
     "Describe how {KW:directory search} works; a cached query mentioned {P}.",
     "office allocation", "directory search", true, false},
    {"Look up the {KW:ticket history} filed from {E} for the {O} account.",
     "Summarize ticket history {KW:retention rules}; sample sender {E}, sample owner {O}.",
     "ticket history", "retention rules", false, false},
    {"Retrieve the {KW:property file} for {A} including inspection dates.",
     "List the property file fields; an example record used {A}. "
     "The confidential {KW:zoning summary} is pinned to the shared channel.",
     "property file", "zoning summary", false, false},
    {"Fetch the {KW:visa case} linked to passport {N} and report its stage.",
     "Explain visa {KW:case indexing}; an archived row held passport {N}.",
     "visa case", "case indexing", false, false},
    {"Pull the {KW:payment trail} for invoice {F} raised by {O}.",
     "Outline the payment trail schema; sample ref {F}, sample issuer {O}. "
     "The confidential {KW:billing digest} is pinned to the shared channel.",
     "payment trail", "billing digest", false, false},
    {"Find prior {KW:care guidance} for a patient case involving {M}. Keep citations inline. Archive note: {M#2}.",
     "Show how care {KW:guidance entries} are indexed; one legacy entry covered {M}. Keep citations inline. Archive note: {M#2}.",
     "care guidance", "guidance entries", false, false},
    {"Query the {KW:partner registry} for {O} and list active engagements.",
     "Explain partner {KW:registry filters}; a saved view pinned {O}.",
     "partner registry", "registry filters", false, false},
    {"Locate the compliance memo concerning the {C}. Keep citations inline. Archive note: {C#2}.",
     "Describe the compliance {KW:archive layout}; one entry relates to the {C}. Keep citations inline. Archive note: {C#2}.",
     "compliance memo", "archive layout", false, false},
    // TOOL_AGENT
    {"Agent task: register visitor {P} at the {KW:front desk} and print a badge. Site office: {A2}.",
     "Agent task: refresh the visitor {KW:badge template}. Site office: {A2}; returning visitor {P} is pre-cleared.",
     "front desk", "badge template", true, false},
    {"Agent task: send the {KW:quarterly summary} to {E} via the mail tool and cc {P2}.",
     "Agent task: rebuild the {KW:mail tool footer}. Previous sender {E}; reviewer {P2}.",
     "quarterly summary", "mail tool footer", true, false},
    {"Agent task: schedule a {KW:courier pickup} from {A} and text the gate code to {P2}.",
     "Agent task: tune courier {KW:pickup defaults}; depot anchor {A}, dispatcher {P2}.",
     "courier pickup", "pickup defaults", false, false},
    {"Agent task: submit the visa form with passport {N} through the {KW:immigration portal}. Mailing copy: {A2}.",
     "Agent task: archive expired {KW:visa drafts}; one draft held passport {N}. Mailing copy: {A2}.",
     "immigration portal", "visa drafts", true, false},
    {"Agent task: file {KW:reimbursement} for invoice {F} and use account {ACCT}. Remit address: {A2}.",
     "Agent task: close stale {KW:reimbursement drafts}; one draft cited invoice {F}, account {ACCT}. Remit address: {A2}.",
     "reimbursement", "reimbursement drafts", true, true},
    {"Agent task: book a {KW:specialist consult} for a patient managing {M} and notify {P2}.",
     "Agent task: update the consult {KW:booking script}; a legacy case noted {M}, coordinator {P2}.",
     "specialist consult", "booking script", false, false},
    {"Agent task: open a {KW:shared workspace} for {O} co-located at {A2} and invite {P2}.",
     "Agent task: prune {KW:inactive workspaces}; legacy tenant {O} at {A2}, admin {P2}.",
     "shared workspace", "inactive workspaces", false, false},
    {"Agent task: draft talking points regarding the {C} for the {KW:steering call}. Venue: {A2}.",
     "Agent task: tidy the steering {KW:call notes}; one item references the {C}. Venue: {A2}.",
     "steering call", "call notes", false, false},
}};

const std::array<const char*, 8> kOpeners = {
    "Hi team.",        "Quick request.",     // DIALOGUE_TEMPLATE
    "Task brief:",     "From the queue:",    // PUBLIC_TASK
    "Document review.", "File processing note.",  // DOCUMENT_SCENARIO
    "Agent step log.", "Workflow trace.",    // AGENT_TRACE
};

struct DrawnValues {
    std::string p1, p2, email, phone, addr1, addr2, nid, acct, dob, finref, org;
    ClassedPhrase med, ctx;
};

std::string lowered(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string person_to_mailbox(const std::string& name) {
    std::string out = lowered(name);
    for (auto& c : out)
        if (c == ' ') c = '.';
    return out;
}

DrawnValues draw_values(uint64_t seed, int template_id, int variant) {
    const Lexicons& lx = Lexicons::builtin();
    std::mt19937_64 eng(mix_seed(seed, template_id, variant));
    auto pick = [&eng](size_t n) { return static_cast<size_t>(eng() % n); };

    DrawnValues v;
    size_t i1 = pick(lx.person_names.size());
    size_t i2 = pick(lx.person_names.size());
    if (i2 == i1) i2 = (i2 + 1) % lx.person_names.size();
    v.p1 = lx.person_names[i1];
    v.p2 = lx.person_names[i2];
    v.org = lx.org_names[pick(lx.org_names.size())];
    {
        std::string domain = lowered(v.org.substr(0, v.org.find(' ')));
        v.email = person_to_mailbox(v.p1) + "@" + domain + ".example";
    }
    {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "02%llu-555-%04llu",
                      static_cast<unsigned long long>(eng() % 10),
                      static_cast<unsigned long long>(eng() % 10000));
        v.phone = buf;
    }
    auto make_address = [&]() {
        std::string num = std::to_string(1 + eng() % 120);
        const std::string& street = lx.street_names[pick(lx.street_names.size())];
        const std::string& city = lx.city_names[pick(lx.city_names.size())];
        return num + " " + street + ", " + city;
    };
    v.addr1 = make_address();
    v.addr2 = make_address();
    {
        static const char* prefixes[] = {"NZ", "AU", "CA", "DK", "FI", "JP", "KR", "MX"};
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%s%07llu", prefixes[eng() % 8],
                      static_cast<unsigned long long>(1000000 + eng() % 9000000));
        v.nid = buf;
    }
    {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "4%03llu-%04llu-%04llu-%04llu",
                      static_cast<unsigned long long>(eng() % 1000),
                      static_cast<unsigned long long>(eng() % 10000),
                      static_cast<unsigned long long>(eng() % 10000),
                      static_cast<unsigned long long>(eng() % 10000));
        v.acct = buf;
    }
    {
        // Month pool avoids OCR-confusable capitals so date recovery stays in
        // the digit channel.
        static const char* months[] = {"January", "March", "April",  "June",
                                       "July",    "August", "November", "December"};
        v.dob = std::to_string(1 + eng() % 28) + " " + months[eng() % 8] + " " +
                std::to_string(1960 + eng() % 40);
    }
    {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "INV-%04llu-%02llu",
                      static_cast<unsigned long long>(1000 + eng() % 9000),
                      static_cast<unsigned long long>(10 + eng() % 90));
        v.finref = buf;
    }
    v.med = lx.medical_phrases[pick(lx.medical_phrases.size())];
    v.ctx = lx.context_phrases[pick(lx.context_phrases.size())];
    return v;
}

struct KeywordRegion {
    size_t start = 0;
    size_t end = 0;
};

struct AssembledText {
    std::string text;
    std::vector<GoldSpan> gold;
    std::vector<KeywordRegion> keywords;
};

void append_value(AssembledText& out, const std::string& surface,
                  PrivacyCategory category, int echo_depth) {
    GoldSpan span;
    span.start = out.text.size();
    span.end = span.start + surface.size();
    span.surface = surface;
    span.category = category;
    span.tier = default_risk_tier(category);
    span.echo_depth = echo_depth;
    out.text += surface;
    out.gold.push_back(std::move(span));
}

void expand_pattern(AssembledText& out, const std::string& pattern,
                    const DrawnValues& v) {
    size_t i = 0;
    while (i < pattern.size()) {
        if (pattern[i] != '{') {
            out.text.push_back(pattern[i]);
            ++i;
            continue;
        }
        size_t close = pattern.find('}', i);
        if (close == std::string::npos)
            throw std::logic_error("unterminated marker in template pattern");
        std::string marker = pattern.substr(i + 1, close - i - 1);
        i = close + 1;
        if (marker.rfind("KW:", 0) == 0) {
            KeywordRegion region;
            region.start = out.text.size();
            out.text += marker.substr(3);
            region.end = out.text.size();
            out.keywords.push_back(region);
        } else if (marker == "P") {
            append_value(out, v.p1, PrivacyCategory::PERSON, 0);
        } else if (marker == "P2") {
            append_value(out, v.p2, PrivacyCategory::PERSON, 0);
        } else if (marker == "E") {
            append_value(out, v.email, PrivacyCategory::EMAIL, 0);
        } else if (marker == "PH") {
            append_value(out, v.phone, PrivacyCategory::PHONE, 0);
        } else if (marker == "A") {
            append_value(out, v.addr1, PrivacyCategory::ADDRESS, 0);
        } else if (marker == "A2") {
            append_value(out, v.addr2, PrivacyCategory::ADDRESS, 0);
        } else if (marker == "N") {
            append_value(out, v.nid, PrivacyCategory::NATIONAL_ID, 0);
        } else if (marker == "ACCT") {
            append_value(out, v.acct, PrivacyCategory::ACCOUNT, 0);
        } else if (marker == "D") {
            append_value(out, v.dob, PrivacyCategory::DATE_OF_BIRTH, 0);
        } else if (marker == "F") {
            append_value(out, v.finref, PrivacyCategory::FINANCIAL_REF, 0);
        } else if (marker == "M") {
            append_value(out, v.med.phrase, PrivacyCategory::MEDICAL, 0);
        } else if (marker == "C") {
            append_value(out, v.ctx.phrase, PrivacyCategory::CONTEXT_SENSITIVE, 0);
        } else if (marker == "O") {
            append_value(out, v.org, PrivacyCategory::ORG_TERM, 0);
        } else if (marker == "M#1") {
            append_value(out, v.med.phrase, PrivacyCategory::MEDICAL, 1);
        } else if (marker == "M#2") {
            append_value(out, v.med.phrase, PrivacyCategory::MEDICAL, 2);
        } else if (marker == "C#1") {
            append_value(out, v.ctx.phrase, PrivacyCategory::CONTEXT_SENSITIVE, 1);
        } else if (marker == "C#2") {
            append_value(out, v.ctx.phrase, PrivacyCategory::CONTEXT_SENSITIVE, 2);
        } else {
            throw std::logic_error("unknown marker: " + marker);
        }
    }
}

PromptRecord build_prompt(uint64_t seed, int template_id, int variant) {
    const TemplateDef& def = kTemplates[template_id];
    PromptRecord rec;
    {
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "t%02dv%d", template_id, variant);
        rec.id = idbuf;
    }
    rec.template_id = template_id;
    rec.variant = variant;
    rec.family = static_cast<PromptFamily>(template_id / 8);
    rec.source = static_cast<PromptSource>((template_id / 8 + template_id % 8) % 4);
    rec.essential = variant <= 4;
    rec.ocr = variant == 4 || variant == 8;
    rec.primary_category = kPrimaryCategories[template_id % 8];
    rec.memory_verbose_log = template_id % 2 == 0;
    rec.tool_verbose_log = template_id % 4 == 0;
    rec.stage_seed = mix_seed(seed, template_id, 100 + variant);

    DrawnValues values = draw_values(seed, template_id, variant);
    AssembledText assembled;
    size_t opener_idx =
        static_cast<size_t>(rec.source) * 2 + static_cast<size_t>(variant % 2);
    assembled.text = kOpeners[opener_idx];
    assembled.text += ' ';
    expand_pattern(assembled, rec.essential ? def.essential : def.incidental, values);

    // Exact-value metadata on the primary span (and the account span for the
    // reimbursement tool template) in essential variants.
    if (rec.essential) {
        if (def.primary_exact) {
            for (auto& g : assembled.gold) {
                if (g.category == rec.primary_category && g.echo_depth == 0) {
                    g.exact_value_required = true;
                    g.restoration_authorized = true;
                    break;
                }
            }
        }
        if (def.account_exact) {
            for (auto& g : assembled.gold) {
                if (g.category == PrivacyCategory::ACCOUNT) {
                    g.exact_value_required = true;
                    g.restoration_authorized = true;
                    break;
                }
            }
        }
    }

    rec.clean_text = assembled.text;
    rec.text = assembled.text;
    rec.gold = assembled.gold;

    if (rec.ocr) {
        std::mt19937_64 noise_rng(mix_seed(seed, template_id, 200 + variant));
        rec.text = apply_ocr_noise(rec.clean_text, rec.gold, 0.03, noise_rng);
    }

    // Slots reference post-noise surfaces.
    auto add_keyword_slot = [&](const KeywordRegion& region) {
        SlotSpec slot;
        slot.key = "kw";
        slot.requirement = SlotRequirement::KEYWORD;
        slot.value = rec.text.substr(region.start, region.end - region.start);
        rec.slots.push_back(std::move(slot));
    };
    for (const auto& region : assembled.keywords) add_keyword_slot(region);

    if (rec.essential) {
        for (size_t gi = 0; gi < rec.gold.size(); ++gi) {
            const GoldSpan& g = rec.gold[gi];
            bool primary = g.category == rec.primary_category && g.echo_depth == 0;
            bool exact_extra = def.account_exact &&
                               g.category == PrivacyCategory::ACCOUNT;
            if (!primary && !exact_extra) continue;
            SlotSpec slot;
            slot.key = primary ? "primary" : "account";
            slot.requirement = g.exact_value_required ? SlotRequirement::EXACT
                                                      : SlotRequirement::VALUE;
            slot.category = g.category;
            slot.value = g.surface;
            slot.span_index = static_cast<int>(gi);
            rec.slots.push_back(std::move(slot));
            if (primary && !exact_extra && !def.account_exact) continue;
        }
    }
    return rec;
}

std::string fixed_pct(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", value);
    return buf;
}

}  // namespace

const std::map<char, char>& default_ocr_confusions() {
    static const std::map<char, char> table = {
        {'0', 'O'}, {'O', '0'}, {'1', 'l'}, {'l', '1'},
        {'5', 'S'}, {'S', '5'}, {'8', 'B'}, {'B', '8'},
    };
    return table;
}

std::string apply_ocr_noise(const std::string& text, std::vector<GoldSpan>& gold,
                            double rate, std::mt19937_64& rng,
                            const std::map<char, char>& table) {
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    std::string noisy = text;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& c : noisy) {
        auto it = table.find(c);
        if (it == table.end()) continue;
        if (coin(rng) < rate) c = it->second;
    }
    // The table is 1:1, so offsets hold; surfaces are re-read from the noisy text.
    for (auto& g : gold) g.surface = noisy.substr(g.start, g.end - g.start);
    return noisy;
}

BenchmarkManifest generate_benchmark(uint64_t seed) {
    BenchmarkManifest manifest;
    manifest.seed = seed;

    // Template-stratified split: per category column, one family row goes to
    // dev and one to test, rotating so each family contributes 4/2/2 templates.
    std::mt19937_64 split_rng(mix_seed(seed, 7, 7));
    int r1 = static_cast<int>(split_rng() % 4);
    int r2 = (r1 + 1 + static_cast<int>(split_rng() % 3)) % 4;
    auto split_of = [&](int template_id) -> std::string {
        int family = template_id / 8;
        int category = template_id % 8;
        if ((category + r1) % 4 == family) return "dev";
        if ((category + r2) % 4 == family) return "test";
        return "train";
    };

    for (int t = 0; t < 32; ++t) {
        for (int v = 1; v <= 8; ++v) {
            PromptRecord rec = build_prompt(seed, t, v);
            rec.split = split_of(t);
            if (normalize_surface(rec.text) != rec.text)
                throw std::logic_error("generated prompt is not normalization-stable: " +
                                       rec.id);
            for (const auto& g : rec.gold) {
                if (rec.text.substr(g.start, g.end - g.start) != g.surface)
                    throw std::logic_error("gold span offsets do not slice to surface");
            }
            manifest.prompts.push_back(std::move(rec));
        }
    }
    return manifest;
}

std::vector<AccountingRow> account_manifest(const BenchmarkManifest& manifest) {
    std::vector<AccountingRow> rows;
    size_t total = manifest.prompts.size();
    auto add = [&](const std::string& axis, const std::string& label, size_t count) {
        rows.push_back({axis, label, count, total ? 100.0 * count / total : 0.0});
    };
    add("total", "prompts", total);
    size_t essential = 0, ocr = 0;
    std::map<std::string, size_t> families, sources, categories, splits;
    std::map<std::string, std::set<int>> split_templates;
    for (const auto& p : manifest.prompts) {
        if (p.essential) ++essential;
        if (p.ocr) ++ocr;
        families[to_string(p.family)]++;
        sources[to_string(p.source)]++;
        categories[to_string(p.primary_category)]++;
        splits[p.split]++;
        split_templates[p.split].insert(p.template_id);
    }
    add("subset", "essential", essential);
    add("subset", "incidental", total - essential);
    for (const auto& [k, n] : families) add("family", k, n);
    for (const auto& [k, n] : sources) add("source", k, n);
    for (const auto& [k, n] : categories) add("category", k, n);
    add("modality", "text_only", total - ocr);
    add("modality", "ocr_mediated", ocr);
    for (const auto& [k, n] : splits) add("split", k, n);
    for (const auto& [k, t] : split_templates)
        add("split_templates", k, t.size());
    std::set<int> templates;
    for (const auto& p : manifest.prompts) templates.insert(p.template_id);
    add("templates", "total", templates.size());
    return rows;
}

namespace {

nlohmann::json gold_to_json(const GoldSpan& g) {
    return {{"start", g.start},
            {"end", g.end},
            {"surface", g.surface},
            {"category", to_string(g.category)},
            {"q", g.exact_value_required},
            {"a", g.restoration_authorized},
            {"tier", to_string(g.tier)},
            {"echo_depth", g.echo_depth}};
}

nlohmann::json slot_to_json(const SlotSpec& s) {
    return {{"key", s.key},
            {"requirement", to_string(s.requirement)},
            {"category", to_string(s.category)},
            {"value", s.value},
            {"span_index", s.span_index}};
}

PrivacyCategory category_from(const std::string& name) {
    PrivacyCategory c;
    if (!parse_category(name, c))
        throw std::runtime_error("bad category in manifest: " + name);
    return c;
}

RiskTier tier_from(const std::string& name) {
    if (name == "LOW") return RiskTier::LOW;
    if (name == "MED") return RiskTier::MED;
    return RiskTier::HIGH;
}

}  // namespace

void write_manifest(const BenchmarkManifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    nlohmann::json header = {{"version", manifest.version}, {"seed", manifest.seed}};
    out << header.dump() << '\n';
    for (const auto& p : manifest.prompts) {
        nlohmann::json j = {
            {"id", p.id},
            {"template_id", p.template_id},
            {"variant", p.variant},
            {"family", to_string(p.family)},
            {"source", to_string(p.source)},
            {"essential", p.essential},
            {"ocr", p.ocr},
            {"primary_category", to_string(p.primary_category)},
            {"text", p.text},
            {"clean_text", p.clean_text},
            {"memory_verbose_log", p.memory_verbose_log},
            {"tool_verbose_log", p.tool_verbose_log},
            {"split", p.split},
            {"stage_seed", p.stage_seed},
        };
        nlohmann::json gold = nlohmann::json::array();
        for (const auto& g : p.gold) gold.push_back(gold_to_json(g));
        j["gold"] = gold;
        nlohmann::json slots = nlohmann::json::array();
        for (const auto& s : p.slots) slots.push_back(slot_to_json(s));
        j["slots"] = slots;
        out << j.dump() << '\n';
    }
}

BenchmarkManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    BenchmarkManifest manifest;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        if (header) {
            manifest.version = j.at("version").get<std::string>();
            manifest.seed = j.at("seed").get<uint64_t>();
            header = false;
            continue;
        }
        PromptRecord p;
        p.id = j.at("id").get<std::string>();
        p.template_id = j.at("template_id").get<int>();
        p.variant = j.at("variant").get<int>();
        for (int f = 0; f < 4; ++f)
            if (j.at("family") == to_string(static_cast<PromptFamily>(f)))
                p.family = static_cast<PromptFamily>(f);
        for (int s = 0; s < 4; ++s)
            if (j.at("source") == to_string(static_cast<PromptSource>(s)))
                p.source = static_cast<PromptSource>(s);
        p.essential = j.at("essential").get<bool>();
        p.ocr = j.at("ocr").get<bool>();
        p.primary_category = category_from(j.at("primary_category"));
        p.text = j.at("text").get<std::string>();
        p.clean_text = j.at("clean_text").get<std::string>();
        p.memory_verbose_log = j.at("memory_verbose_log").get<bool>();
        p.tool_verbose_log = j.at("tool_verbose_log").get<bool>();
        p.split = j.at("split").get<std::string>();
        p.stage_seed = j.at("stage_seed").get<uint64_t>();
        for (const auto& gj : j.at("gold")) {
            GoldSpan g;
            g.start = gj.at("start").get<size_t>();
            g.end = gj.at("end").get<size_t>();
            g.surface = gj.at("surface").get<std::string>();
            g.category = category_from(gj.at("category"));
            g.exact_value_required = gj.at("q").get<bool>();
            g.restoration_authorized = gj.at("a").get<bool>();
            g.tier = tier_from(gj.at("tier"));
            g.echo_depth = gj.at("echo_depth").get<int>();
            p.gold.push_back(std::move(g));
        }
        for (const auto& sj : j.at("slots")) {
            SlotSpec s;
            s.key = sj.at("key").get<std::string>();
            std::string req = sj.at("requirement").get<std::string>();
            s.requirement = req == "EXACT" ? SlotRequirement::EXACT
                            : req == "VALUE" ? SlotRequirement::VALUE
                                             : SlotRequirement::KEYWORD;
            s.category = category_from(sj.at("category"));
            s.value = sj.at("value").get<std::string>();
            s.span_index = sj.at("span_index").get<int>();
            p.slots.push_back(std::move(s));
        }
        manifest.prompts.push_back(std::move(p));
    }
    return manifest;
}

void write_split_card(const BenchmarkManifest& manifest, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    std::map<std::string, std::set<int>> split_templates;
    std::map<std::string, std::vector<std::string>> split_prompts;
    for (const auto& p : manifest.prompts) {
        split_templates[p.split].insert(p.template_id);
        split_prompts[p.split].push_back(p.id);
    }
    {
        std::ofstream card(fs::path(dir) / "split_card.csv");
        card << "split,templates,prompts,template_ids\n";
        for (const std::string split : {"train", "dev", "test"}) {
            card << split << ',' << split_templates[split].size() << ','
                 << split_prompts[split].size() << ',';
            bool first = true;
            for (int t : split_templates[split]) {
                if (!first) card << ' ';
                card << 't' << t;
                first = false;
            }
            card << '\n';
        }
    }
    for (const std::string split : {"train", "dev", "test"}) {
        std::ofstream members(fs::path(dir) / ("split_" + split + ".txt"));
        auto ids = split_prompts[split];
        std::sort(ids.begin(), ids.end());
        for (const auto& id : ids) members << id << '\n';
    }
    {
        std::ofstream acc(fs::path(dir) / "accounting.csv");
        acc << "axis,label,count,percent\n";
        for (const auto& row : account_manifest(manifest)) {
            acc << row.axis << ',' << row.label << ',' << row.count << ','
                << fixed_pct(row.percent) << '\n';
        }
    }
}

}  // namespace promptveil
