#include "orgrisk/explain.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "orgrisk/scenario_io.hpp"

namespace orgrisk {

using nlohmann::json;

std::size_t ProofTree::depth() const {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth() + 1);
    return d;
}

namespace {

class Prover {
public:
    explicit Prover(const InferenceResult& r) : result_(r) {}

    std::size_t depth(const Fact& f) {
        if (auto it = depth_.find(f); it != depth_.end()) return it->second;
        return best(f).first;
    }

    ProofTree tree(const Fact& f) {
        const Derivation* d = best(f).second;
        ProofTree t{f, std::string(kAssertedRule), {}, {}};
        if (!d || d->rule == kAssertedRule) return t;
        t.rule = d->rule;
        t.absent = d->absent;
        for (const auto& p : d->premises) t.children.push_back(tree(p));
        return t;
    }

private:
    // Derivations over derived facts are acyclic, so plain recursion ends.
    std::pair<std::size_t, const Derivation*> best(const Fact& f) {
        if (auto it = choice_.find(f); it != choice_.end()) return {depth_.at(f), it->second};
        const auto& ds = result_.derivations_of(f);
        const Derivation* pick = nullptr;
        std::size_t pick_depth = 0;
        for (const auto& d : ds) {
            std::size_t dd = 0;
            if (d.rule != kAssertedRule) {
                for (const auto& p : d.premises) dd = std::max(dd, depth(p) + 1);
                dd = std::max<std::size_t>(dd, 1);
            }
            if (!pick || std::tie(dd, d.premises, d.absent, d.rule) <
                             std::tie(pick_depth, pick->premises, pick->absent, pick->rule)) {
                pick = &d;
                pick_depth = dd;
            }
        }
        depth_[f] = pick_depth;
        choice_[f] = pick;
        return {pick_depth, pick};
    }

    const InferenceResult& result_;
    std::map<Fact, std::size_t> depth_;
    std::map<Fact, const Derivation*> choice_;
};

std::vector<std::string> fact_strings(const std::vector<Fact>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(to_string(f));
    return out;
}

Fact fact_from_json(const json& j) {
    if (!j.is_string()) throw Error("InvalidReport", "expected a fact string");
    auto f = parse_fact(j.get<std::string>());
    if (!f) throw Error("InvalidReport", "malformed fact '" + j.get<std::string>() + "'");
    return *f;
}

void render_node(const ProofTree& t, int indent, std::string& out) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out += pad + to_string(t.root) + "  [" + t.rule + "]\n";
    for (const auto& a : t.absent) out += pad + "  not " + to_string(a) + "\n";
    for (const auto& c : t.children) render_node(c, indent + 1, out);
}

struct SectionSpec {
    std::string_view predicate;
    std::string_view title;
};

constexpr SectionSpec kSections[] = {
    {pred::CoordinationNeed, "Coordination needs"},
    {pred::CoordinationRisk, "Coordination risks"},
    {pred::CooperationRisk, "Cooperation risks"},
    {pred::FreeRidingRisk, "Free-riding risks"},
    {pred::ShirkRisk, "Shirking risks"},
    {pred::SubGoalOptimizationRisk, "Sub-goal optimization risks"},
    {pred::StrategicSubstitutes, "Strategic substitutes (informational)"},
};

}  // namespace

ProofTree explain(const InferenceResult& result, const Fact& fact) {
    if (!result.contains(fact)) throw FactNotFoundError(to_string(fact));
    Prover p(result);
    return p.tree(fact);
}

const Fact& fact_by_id(const InferenceResult& result, const std::string& id) {
    for (const auto& [f, _] : result.facts)
        if (fact_id(f) == id) return f;
    throw FactNotFoundError("#" + id);
}

json proof_to_json(const ProofTree& t) {
    json children = json::array();
    for (const auto& c : t.children) children.push_back(proof_to_json(c));
    json j{{"fact", to_string(t.root)},
           {"factId", fact_id(t.root)},
           {"rule", t.rule},
           {"children", std::move(children)}};
    if (!t.absent.empty()) j["absent"] = fact_strings(t.absent);
    return j;
}

ProofTree proof_from_json(const json& j) {
    if (!j.is_object() || !j.contains("fact") || !j.contains("rule"))
        throw Error("InvalidReport", "proof node needs 'fact' and 'rule'");
    ProofTree t{fact_from_json(j["fact"]), j["rule"].get<std::string>(), {}, {}};
    if (auto it = j.find("absent"); it != j.end())
        for (const auto& a : *it) t.absent.push_back(fact_from_json(a));
    if (auto it = j.find("children"); it != j.end())
        for (const auto& c : *it) t.children.push_back(proof_from_json(c));
    return t;
}

std::string render_proof(const ProofTree& tree) {
    std::string out;
    render_node(tree, 0, out);
    return out;
}

std::string describe(const Fact& f) {
    const auto& a = f.args;
    const std::string& p = f.predicate;
    if (p == pred::PredictiveNeed && a.size() == 4)
        return a[0] + " must anticipate how " + a[1] + " performs " + a[3] + " because " + a[2] +
               " depends on it";
    if (p == pred::OutcomeDependentOn && a.size() == 3)
        return a[0] + " is appraised together with " + a[1] + " under " + a[2];
    if (p == pred::EpistemicallyDependentOn && a.size() == 3)
        return a[0] + " relies on predicting " + a[1] + " to do well under " + a[2];
    if (p == pred::RewardDependentOn && a.size() == 3)
        return a[0] + "'s reward under " + a[2] + " depends on how " + a[1] + " performs";
    if (p == pred::CoordinationNeed && a.size() == 2)
        return a[0] + " and " + a[1] + " need to coordinate their work";
    if (p == pred::CoordinationRisk && a.size() == 2)
        return a[0] + " and " + a[1] + " need to coordinate but no coordination mechanism covers them";
    if (p == pred::FreeRidingRisk && a.size() == 2)
        return a[0] + " can free-ride under " + a[1] +
               " because it is the sole contributor to none of its subjects";
    if (p == pred::ShirkRisk && a.size() == 2)
        return a[0] + " cannot be held to account for " + a[1] + " because no evaluation covers it";
    if (p == pred::SubGoalOptimizationRisk && a.size() == 3)
        return a[0] + " and " + a[1] + " are evaluated only individually although their work jointly shapes " +
               a[2];
    if (p == pred::StrategicSubstitutes && a.size() == 3)
        return a[0] + " and " + a[1] + " offset each other's effect on " + a[2];
    if (p == pred::CooperationRisk && a.size() == 2)
        return "the interests of " + a[0] + " and " + a[1] + " are not aligned";
    return to_string(f);
}

std::vector<std::string> cooperation_clauses(const InferenceResult& result, const Fact& fact) {
    std::vector<std::string> out;
    if (fact.predicate != pred::CooperationRisk) return out;
    const auto& ds = result.derivations_of(fact);
    auto via = [&](std::string_view rule) {
        return std::any_of(ds.begin(), ds.end(), [&](const Derivation& d) { return d.rule == rule; });
    };
    if (via(kCooperationViaFreeRiding)) out.push_back("free-riding");
    if (via(kCooperationViaShirking)) out.push_back("shirking");
    if (via(kCooperationViaSubGoal)) out.push_back("sub-goal optimization");
    return out;
}

const ReportSection* RiskReport::section(std::string_view predicate) const {
    for (const auto& s : sections)
        if (s.predicate == predicate) return &s;
    return nullptr;
}

std::size_t RiskReport::count(std::string_view predicate) const {
    const ReportSection* s = section(predicate);
    return s ? s->entries.size() : 0;
}

RiskReport build_report(const InferenceResult& result) {
    RiskReport r;
    if (result.model) r.model_id = content_hash(serialize_scenario(*result.model));
    for (const auto& spec : kSections) {
        ReportSection s{std::string(spec.predicate), std::string(spec.title), {}};
        for (const auto& f : result.of(spec.predicate)) {
            ReportEntry e{f, fact_id(f), describe(f), cooperation_clauses(result, f)};
            if (!e.clauses.empty()) {
                e.text += " (";
                for (std::size_t i = 0; i < e.clauses.size(); ++i)
                    e.text += (i ? ", " : "") + e.clauses[i];
                e.text += ")";
            }
            s.entries.push_back(std::move(e));
        }
        r.sections.push_back(std::move(s));
    }
    return r;
}

json report_to_json(const RiskReport& r) {
    json sections = json::array();
    for (const auto& s : r.sections) {
        json entries = json::array();
        for (const auto& e : s.entries) {
            json j{{"fact", to_string(e.fact)}, {"factId", e.fact_id}, {"text", e.text}};
            if (!e.clauses.empty()) j["clauses"] = e.clauses;
            entries.push_back(std::move(j));
        }
        sections.push_back(json{{"predicate", s.predicate},
                                {"title", s.title},
                                {"count", s.entries.size()},
                                {"entries", std::move(entries)}});
    }
    return json{{"modelId", r.model_id}, {"sections", std::move(sections)}};
}

RiskReport report_from_json(const json& doc) {
    try {
        RiskReport r;
        r.model_id = doc.at("modelId").get<std::string>();
        for (const auto& s : doc.at("sections")) {
            ReportSection sec{s.at("predicate").get<std::string>(), s.at("title").get<std::string>(), {}};
            for (const auto& e : s.at("entries")) {
                ReportEntry entry{fact_from_json(e.at("fact")), e.at("factId").get<std::string>(),
                                  e.at("text").get<std::string>(), {}};
                if (auto it = e.find("clauses"); it != e.end())
                    entry.clauses = it->get<std::vector<std::string>>();
                sec.entries.push_back(std::move(entry));
            }
            if (s.contains("count") && s["count"].get<std::size_t>() != sec.entries.size())
                throw Error("InvalidReport", "section " + sec.predicate + " count does not match entries");
            r.sections.push_back(std::move(sec));
        }
        return r;
    } catch (const json::exception& e) {
        throw Error("InvalidReport", e.what());
    }
}

std::string render_report(const RiskReport& r, ReportFormat format) {
    if (format == ReportFormat::Structured) return report_to_json(r).dump(2) + "\n";
    std::string out = "Risk report";
    if (!r.model_id.empty()) out += " for model " + r.model_id;
    out += "\n";
    for (const auto& s : r.sections) {
        out += "\n" + s.title + " (" + std::to_string(s.entries.size()) + ")\n";
        for (const auto& e : s.entries)
            out += "  - " + e.text + "\n      " + to_string(e.fact) + "  #" + e.fact_id + "\n";
    }
    return out;
}

std::string render_report(const InferenceResult& result, ReportFormat format) {
    return render_report(build_report(result), format);
}

RiskReport parse_structured_report(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error("InvalidReport", e.what());
    }
    return report_from_json(doc);
}

}  // namespace orgrisk
