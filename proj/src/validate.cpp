#include "orgrisk/validate.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace orgrisk {

std::string_view to_string(Severity s) { return s == Severity::Error ? "Error" : "Warning"; }

std::string format_violation(const Violation& v) {
    std::string ids;
    for (const auto& id : v.entity_ids) {
        if (!ids.empty()) ids += ',';
        ids += id;
    }
    return std::string(to_string(v.severity)) + " " + v.code + " [" + ids + "]: " + v.message;
}

bool has_errors(const std::vector<Violation>& violations) {
    return std::any_of(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.severity == Severity::Error; });
}

InvalidModelError::InvalidModelError(std::vector<Violation> violations)
    : Error("InvalidModel", "model has validation errors"), violations_(std::move(violations)) {}

namespace {

class Validator {
public:
    explicit Validator(const OrgModel& m) : m_(m) {}

    std::vector<Violation> run() {
        check_duplicate_ids();
        check_membership();
        check_goals_and_tasks();
        check_activities();
        check_conditions(m_.specs, EntityKind::Spec, CharacteristicKind::Activity);
        check_conditions(m_.states, EntityKind::State, CharacteristicKind::State);
        check_evaluations();
        check_incentives();
        check_mechanisms();
        check_relations();

        for (auto& v : out_) std::sort(v.entity_ids.begin(), v.entity_ids.end());
        std::sort(out_.begin(), out_.end(), [](const Violation& a, const Violation& b) {
            const Id& ka = a.entity_ids.empty() ? Id{} : a.entity_ids.front();
            const Id& kb = b.entity_ids.empty() ? Id{} : b.entity_ids.front();
            return std::tie(ka, a.code, a.message, a.entity_ids) <
                   std::tie(kb, b.code, b.message, b.entity_ids);
        });
        out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
        return std::move(out_);
    }

private:
    void error(std::string code, std::string message, std::vector<Id> ids) {
        out_.push_back({Severity::Error, std::move(code), std::move(message), std::move(ids)});
    }
    void warning(std::string code, std::string message, std::vector<Id> ids) {
        out_.push_back({Severity::Warning, std::move(code), std::move(message), std::move(ids)});
    }

    // Reports UNKNOWN_REFERENCE unless `ref` names an entity of one of `kinds`.
    bool ref(const Id& owner, const Id& ref, std::initializer_list<EntityKind> kinds,
             std::string_view field) {
        auto found = m_.kinds_of(ref);
        for (auto k : kinds)
            if (std::find(found.begin(), found.end(), k) != found.end()) return true;
        std::string expected;
        for (auto k : kinds) {
            if (!expected.empty()) expected += " or ";
            expected += to_string(k);
        }
        std::string msg = std::string(field) + " '" + ref + "' ";
        msg += found.empty() ? "does not resolve" : "is not a " + expected;
        msg += " (expected " + expected + ")";
        error("UNKNOWN_REFERENCE", std::move(msg), {owner});
        return false;
    }

    bool refs(const Id& owner, const IdSet& ids, std::initializer_list<EntityKind> kinds,
              std::string_view field) {
        bool ok = true;
        for (const auto& id : ids) ok = ref(owner, id, kinds, field) && ok;
        return ok;
    }

    void check_duplicate_ids() {
        for (const auto& id : m_.entity_ids()) {
            auto kinds = m_.kinds_of(id);
            if (kinds.size() < 2) continue;
            std::string what;
            for (auto k : kinds) {
                if (!what.empty()) what += ", ";
                what += to_string(k);
            }
            error("DUPLICATE_ID", "id '" + id + "' is used by several entities (" + what + ")",
                  {id});
        }
    }

    void check_membership() {
        std::map<Id, IdSet> members;
        for (const auto& r : m_.relations) {
            if (r.kind != RelationKind::MemberOf) continue;
            bool ok = ref(r.second, r.first, {EntityKind::Agent}, "member");
            ok = ref(r.first, r.second, {EntityKind::Agent}, "collective") && ok;
            if (!ok) continue;
            if (m_.agents.at(r.second).kind != AgentKind::Collective)
                error("MEMBER_OF_NON_COLLECTIVE",
                      "'" + r.first + "' is a member of individual '" + r.second + "'",
                      {r.first, r.second});
            members[r.second].insert(r.first);
        }

        // reach[c] = every agent reachable from c by following member edges.
        std::map<Id, IdSet> reach;
        for (const auto& [c, _] : members) {
            IdSet& seen = reach[c];
            std::vector<Id> stack{c};
            while (!stack.empty()) {
                Id cur = stack.back();
                stack.pop_back();
                auto it = members.find(cur);
                if (it == members.end()) continue;
                for (const auto& m : it->second)
                    if (seen.insert(m).second) stack.push_back(m);
            }
        }
        std::set<IdSet> cycles;
        for (const auto& [c, seen] : reach) {
            if (!seen.contains(c)) continue;
            IdSet component{c};
            for (const auto& other : seen)
                if (reach.contains(other) && reach.at(other).contains(c)) component.insert(other);
            cycles.insert(component);
        }
        for (const auto& cyc : cycles) {
            std::string path;
            for (const auto& id : cyc) path += (path.empty() ? "" : ", ") + id;
            error("MEMBERSHIP_CYCLE", "collectives are transitively members of themselves: " + path,
                  std::vector<Id>(cyc.begin(), cyc.end()));
        }
    }

    void check_goals_and_tasks() {
        for (const auto& [id, g] : m_.goals) ref(id, g.desired_state, {EntityKind::State}, "desiredState");
        for (const auto& [id, t] : m_.tasks) {
            ref(id, t.agent, {EntityKind::Agent}, "agent");
            ref(id, t.goal, {EntityKind::Goal}, "goal");
        }
    }

    void check_activities() {
        for (const auto& [id, a] : m_.activities) {
            if (a.performers.empty()) error("EMPTY_PERFORMERS", "activity has no performer", {id});
            bool performers_ok = refs(id, a.performers, {EntityKind::Agent}, "performer");
            refs(id, a.causes, {EntityKind::State}, "causes");
            refs(id, a.enabled_by, {EntityKind::State}, "enabledBy");
            refs(id, a.requires_resources, {EntityKind::Resource}, "requires");
            refs(id, a.produces, {EntityKind::Resource}, "produces");
            for (const auto& c : a.characteristics) {
                if (!ref(id, c, {EntityKind::Characteristic}, "characteristic")) continue;
                if (m_.characteristics.at(c).kind != CharacteristicKind::Activity)
                    error("CHARACTERISTIC_KIND_MISMATCH",
                          "characteristic '" + c + "' is a state characteristic", {id, c});
            }
            if (!a.part_of_task) continue;
            if (!ref(id, *a.part_of_task, {EntityKind::Task}, "partOfTask") || !performers_ok)
                continue;
            const Id& holder = m_.tasks.at(*a.part_of_task).agent;
            if (!m_.agents.contains(holder)) continue;
            const IdSet holder_members = members_of(m_, holder);
            for (const auto& p : a.performers) {
                if (p == holder || holder_members.contains(p)) continue;
                warning("PERFORMER_NOT_TASK_AGENT",
                        "performer '" + p + "' is neither the agent of task '" + *a.part_of_task +
                            "' nor a member of it",
                        {id, p});
            }
        }
    }

    void check_conditions(const std::map<Id, Condition>& nodes, EntityKind kind,
                          CharacteristicKind ckind) {
        const std::string what(to_string(kind));
        for (const auto& [id, c] : nodes) {
            const bool has_atomic = c.characteristic || c.op || c.value;
            if (c.form == Form::Atomic) {
                if (!c.characteristic || !c.op || !c.value || !c.children.empty())
                    error("INVALID_SHAPE",
                          "atomic " + what + " needs characteristic, operator and value and no children",
                          {id});
                if (c.characteristic &&
                    ref(id, *c.characteristic, {EntityKind::Characteristic}, "characteristic") &&
                    m_.characteristics.at(*c.characteristic).kind != ckind)
                    error("CHARACTERISTIC_KIND_MISMATCH",
                          "characteristic '" + *c.characteristic + "' has the wrong kind for a " + what,
                          {id, *c.characteristic});
            } else {
                if (c.children.size() < 2 || has_atomic)
                    error("INVALID_SHAPE",
                          "complex " + what + " needs at least two children and no atomic fields", {id});
                refs(id, c.children, {kind}, "child");
            }
        }

        // Composition cycles, via iterative DFS colouring.
        std::map<Id, int> colour;  // 0 white, 1 grey, 2 black
        std::set<IdSet> cycles;
        std::function<void(const Id&, std::vector<Id>&)> visit = [&](const Id& id,
                                                                      std::vector<Id>& path) {
            colour[id] = 1;
            path.push_back(id);
            auto it = nodes.find(id);
            if (it != nodes.end()) {
                for (const auto& child : it->second.children) {
                    if (!nodes.contains(child)) continue;
                    if (colour[child] == 1) {
                        auto from = std::find(path.begin(), path.end(), child);
                        cycles.insert(IdSet(from, path.end()));
                    } else if (colour[child] == 0) {
                        visit(child, path);
                    }
                }
            }
            path.pop_back();
            colour[id] = 2;
        };
        for (const auto& [id, _] : nodes) {
            if (colour[id] != 0) continue;
            std::vector<Id> path;
            visit(id, path);
        }
        for (const auto& cyc : cycles)
            error("COMPOSITION_CYCLE", what + " composition is cyclic",
                  std::vector<Id>(cyc.begin(), cyc.end()));
    }

    // Agents whose work may appear as a subject of `e`.
    bool performer_answers_to(const Id& performer, const IdSet& evaluatees,
                              const Evaluation& e) const {
        if (evaluatees.contains(performer)) return true;
        if (!m_.agents.contains(performer)) return false;
        const IdSet members = members_of(m_, performer);
        return std::any_of(e.evaluatees.begin(), e.evaluatees.end(),
                           [&](const Id& ev) { return members.contains(ev); });
    }

    void check_evaluations() {
        for (const auto& [id, e] : m_.evaluations) {
            if (e.evaluators.empty()) error("EMPTY_EVALUATORS", "evaluation has no evaluator", {id});
            if (e.evaluatees.empty()) error("EMPTY_EVALUATEES", "evaluation has no evaluatee", {id});
            refs(id, e.evaluators, {EntityKind::Agent}, "evaluator");
            const bool evaluatees_ok = refs(id, e.evaluatees, {EntityKind::Agent}, "evaluatee");
            if (e.target.empty())
                error("MISSING_TARGET", "evaluation has no target", {id});
            else
                ref(id, e.target, {EntityKind::State, EntityKind::Spec}, "target");
            for (const auto& inc : e.incentives) {
                if (!ref(id, inc, {EntityKind::Incentive}, "incentive")) continue;
                if (m_.incentives.at(inc).evaluation != id)
                    error("INCENTIVE_EVALUATION_MISMATCH",
                          "incentive '" + inc + "' is listed by '" + id + "' but tied to '" +
                              m_.incentives.at(inc).evaluation + "'",
                          {id, inc});
            }
            if (!evaluatees_ok) continue;
            const IdSet answerable = evaluatee_individuals(m_, id);
            for (const auto& s : e.subjects) {
                if (!ref(id, s, {EntityKind::Activity, EntityKind::State}, "subject")) continue;
                IdSet contributors = contributors_to(m_, s);
                bool ok = std::any_of(contributors.begin(), contributors.end(), [&](const Id& p) {
                    return performer_answers_to(p, answerable, e);
                });
                if (!ok)
                    error("SUBJECT_NOT_EVALUATEE_WORK",
                          "subject '" + s + "' is not work of (or caused by work of) an evaluatee",
                          {id, s});
            }
        }
    }

    void check_incentives() {
        for (const auto& [id, inc] : m_.incentives) {
            if (inc.recipients.empty()) error("EMPTY_RECIPIENTS", "incentive has no recipient", {id});
            const bool recipients_ok = refs(id, inc.recipients, {EntityKind::Agent}, "recipient");
            if (!ref(id, inc.evaluation, {EntityKind::Evaluation}, "evaluation") || !recipients_ok)
                continue;
            const Evaluation& e = m_.evaluations.at(inc.evaluation);
            bool evaluatees_ok = std::all_of(e.evaluatees.begin(), e.evaluatees.end(),
                                             [&](const Id& a) { return m_.agents.contains(a); });
            if (!evaluatees_ok) continue;
            const IdSet answerable = evaluatee_individuals(m_, inc.evaluation);
            for (const auto& r : inc.recipients)
                if (!answerable.contains(r))
                    error("INCENTIVE_RECIPIENT_NOT_EVALUATEE",
                          "recipient '" + r + "' is not an evaluatee of '" + inc.evaluation + "'",
                          {id, r});
        }
    }

    void check_mechanisms() {
        for (const auto& [id, mech] : m_.mechanisms) {
            if (mech.participants.size() < 2)
                error("TOO_FEW_PARTICIPANTS", "coordination mechanism needs at least two participants",
                      {id});
            refs(id, mech.participants, {EntityKind::Agent}, "participant");
        }
    }

    void check_relations() {
        for (const auto& r : m_.relations) {
            if (r.kind == RelationKind::MemberOf) continue;
            const std::string kind(to_string(r.kind));
            bool ok = ref(r.first, r.first, {EntityKind::Task, EntityKind::Activity}, kind);
            ok = ref(r.second, r.second, {EntityKind::Task, EntityKind::Activity}, kind) && ok;
            if (r.kind == RelationKind::DependsOn) {
                if (r.state)
                    error("INVALID_SHAPE", "DependsOn carries no state", {r.first, r.second});
                if (ok && m_.tasks.contains(r.first) != m_.tasks.contains(r.second))
                    error("DEPENDS_ON_KIND_MISMATCH",
                          "DependsOn must link two tasks or two activities", {r.first, r.second});
                continue;
            }
            if (!r.state)
                error("INVALID_SHAPE", kind + " needs a state", {r.first, r.second});
            else
                ref(r.first, *r.state, {EntityKind::State}, kind + " state");
            if (r.second < r.first)
                error("NONCANONICAL_RELATION", kind + " endpoints must be in id order",
                      {r.first, r.second});
        }
    }

    const OrgModel& m_;
    std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_model(const OrgModel& model) { return Validator(model).run(); }

}  // namespace orgrisk
