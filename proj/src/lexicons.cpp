#include "promptveil/lexicons.hpp"

#include <fstream>
#include <stdexcept>

namespace promptveil {

namespace {

Lexicons make_builtin() {
    Lexicons lx;
    lx.person_names = {
        "Sarah Chen",      "James Rivera",   "Priya Natarajan", "Tom Whitford",
        "Mei Lin Zhao",    "Daniel Okafor",  "Hannah Brooks",   "Luis Almeida",
        "Grace Te Rangi",  "Oliver Hansen",  "Fatima al Rashid", "Peter Kowalski",
        "Aroha Ngata",     "Marcus Bell",    "Yuki Tanaka",     "Elena Petrova",
        "Samuel Adeyemi",  "Ingrid Larsen",  "Rohan Mehta",     "Claire Dubois",
        "Victor Osei",     "Nadia Haddad",   "Ben Carter",      "Sofia Moreno",
        "Liam Donnelly",   "Amara Diallo",   "Jack Thompson",   "Isabelle Roy",
        "Noah Fischer",    "Leilani Kealoha", "Andrei Volkov",  "Maya Krishnan",
        "Ethan Walsh",     "Zainab Karim",   "Hugo Lindqvist",  "Talia Ben Ami",
        "Owen McAllister", "Chioma Eze",     "Felix Braun",     "Anika Sharma",
    };
    lx.org_names = {
        "Northwind Logistics",  "Harbor Analytics",   "Kauri Health Trust",
        "Southern Cross Freight", "Brightline Media", "Tasman Robotics",
        "Fernleaf Energy",      "Silverpeak Capital", "Matai Consulting",
        "Crestview Biotech",    "Pacific Rail Group", "Totara Software",
        "Lakeside Mutual",      "Ironbark Mining",    "Kiwi Orchard Collective",
        "Vantage Aerospace",    "Moana Fisheries",    "Redwood Legal Partners",
        "Skyline Telecom",      "Pounamu Studios",    "Clearwater Pharma",
        "Beacon Hill Institute", "Weta Dynamics",     "Orchid Textiles",
    };
    lx.street_names = {
        "Anzac Avenue",     "Queen Street",     "Victoria Road",
        "Ponsonby Terrace", "Karangahape Road", "Dominion Lane",
        "Fanshawe Street",  "Remuera Crescent", "Tamaki Drive",
        "Wakefield Way",    "Hobson Place",     "Nelson Quay",
        "Grafton Boulevard", "Symonds Street",  "Parnell Rise",
        "Khyber Pass",      "Mount Eden Road",  "Great North Road",
        "Carlton Gore Road", "Sandringham Road", "New North Road",
        "Richmond Avenue",  "College Hill",     "Jervois Road",
    };
    lx.city_names = {
        "Auckland",  "Wellington",  "Christchurch", "Hamilton",
        "Tauranga",  "Dunedin",     "Napier",       "Rotorua",
        "Nelson",    "Queenstown",  "Palmerston North", "Invercargill",
    };
    lx.medical_phrases = {
        {"stage III pancreatic cancer", "oncological"},
        {"metastatic breast carcinoma", "oncological"},
        {"acute lymphoblastic leukemia", "oncological"},
        {"congestive heart failure", "cardiac"},
        {"atrial fibrillation episodes", "cardiac"},
        {"chronic kidney disease stage 4", "renal"},
        {"type 1 diabetes with neuropathy", "metabolic"},
        {"treatment-resistant depression", "psychiatric"},
        {"generalized anxiety disorder", "psychiatric"},
        {"multiple sclerosis relapse", "neurological"},
        {"early-onset Parkinson's disease", "neurological"},
        {"HIV antiretroviral regimen", "infectious-disease"},
        {"hepatitis C genotype 1b", "infectious-disease"},
        {"severe rheumatoid arthritis", "autoimmune"},
        {"ulcerative colitis flare", "gastrointestinal"},
        {"chronic obstructive pulmonary disease", "respiratory"},
    };
    lx.context_phrases = {
        {"pending acquisition of the Waikato plant", "corporate-transaction"},
        {"planned divestment of the freight arm", "corporate-transaction"},
        {"unannounced merger with a rival carrier", "corporate-transaction"},
        {"salary band adjustment for senior staff", "compensation"},
        {"executive severance negotiation", "compensation"},
        {"disciplinary review of a team lead", "personnel"},
        {"whistleblower complaint under investigation", "personnel"},
        {"visa sponsorship withdrawal case", "immigration"},
        {"asylum application backlog memo", "immigration"},
        {"unpatched vulnerability in the billing gateway", "security-incident"},
        {"credential leak from the staging cluster", "security-incident"},
        {"undisclosed litigation settlement terms", "legal"},
        {"draft patent claims for the coating process", "intellectual-property"},
        {"source code escrow release conditions", "intellectual-property"},
        {"quarterly forecast shortfall briefing", "financial-planning"},
        {"debt covenant renegotiation timeline", "financial-planning"},
    };
    lx.weak_triggers = {
        "patient", "diagnosed", "diagnosis", "treatment", "condition",
        "therapy", "medication", "regarding", "concerning", "about",
        "internal", "restructuring", "undisclosed", "briefing", "memo",
        // condition heads let bare clinical phrases self-trigger
        "cancer", "carcinoma", "leukemia", "disease",
    };
    lx.strong_triggers = {
        "confidential", "classified", "sensitive", "privileged",
    };
    lx.trigger_synonyms = {
        {"patient", "person"},       {"diagnosed", "described"},
        {"diagnosis", "finding"},    {"treatment", "handling"},
        {"condition", "situation"},  {"therapy", "support"},
        {"medication", "supplies"},  {"confidential", "routine"},
        {"classified", "ordinary"},  {"sensitive", "general"},
        {"privileged", "standard"},  {"internal", "shared"},
        {"restructuring", "planning"}, {"undisclosed", "noted"},
        {"briefing", "update"},      {"memo", "note"},
    };
    lx.mixed_language_cues = {
        "kia ora", "tena koe", "mo te", "privatnummer", "numero personale",
        "geheime notiz", "datos personales", "renseignements personnels",
    };
    return lx;
}

std::vector<std::string> split_line_class(const std::string& line, std::string& klass) {
    auto pos = line.find('|');
    if (pos == std::string::npos) {
        klass.clear();
        return {line};
    }
    klass = line.substr(pos + 1);
    return {line.substr(0, pos)};
}

}  // namespace

const Lexicons& Lexicons::builtin() {
    static const Lexicons lx = make_builtin();
    return lx;
}

std::vector<std::string> Lexicons::load_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

std::vector<ClassedPhrase> Lexicons::load_classed(const std::string& path) {
    std::vector<ClassedPhrase> out;
    for (const auto& line : load_lines(path)) {
        std::string klass;
        auto parts = split_line_class(line, klass);
        out.push_back({parts[0], klass});
    }
    return out;
}

bool abstraction_template(PrivacyCategory c, std::string& out) {
    switch (c) {
        case PrivacyCategory::PERSON:
            out = "a named colleague";
            return true;
        case PrivacyCategory::ADDRESS:
            out = "an address in central {region}";
            return true;
        case PrivacyCategory::MEDICAL:
            out = "a serious {class} condition";
            return true;
        case PrivacyCategory::CONTEXT_SENSITIVE:
            out = "a confidential {class} matter";
            return true;
        case PrivacyCategory::ORG_TERM:
            out = "a partner organization";
            return true;
        case PrivacyCategory::VISUAL_TEXT:
            out = "text extracted from the attached document";
            return true;
        default:
            return false;  // identifiers fall back to typed placeholders
    }
}

const std::vector<std::string>& surrogate_set(PrivacyCategory c) {
    static const std::vector<std::string> kPerson = {
        "a named colleague",   "a project contact",  "a listed employee",
        "a registered client", "a team member",      "an account holder",
        "a staff delegate",    "a named applicant",  "a case officer",
        "a division lead",
    };
    static const std::vector<std::string> kGeneric = {
        "a protected value",  "a withheld detail",   "a masked reference",
        "a private entry",    "a screened item",     "a reserved field",
        "a filtered mention", "a shielded record",   "a guarded note",
        "a covered term",
    };
    switch (c) {
        case PrivacyCategory::PERSON:
            return kPerson;
        default:
            return kGeneric;
    }
}

}  // namespace promptveil
