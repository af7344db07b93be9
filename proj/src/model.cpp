#include "orgrisk/model.hpp"

#include <algorithm>

#include "orgrisk/errors.hpp"

namespace orgrisk {

std::string_view to_string(AgentKind k) {
    return k == AgentKind::Individual ? "Individual" : "Collective";
}

std::string_view to_string(Form f) {
    switch (f) {
        case Form::Atomic: return "Atomic";
        case Form::Conjunction: return "Conjunction";
        case Form::Disjunction: return "Disjunction";
    }
    return "?";
}

std::string_view to_string(Operator op) {
    switch (op) {
        case Operator::LE: return "LE";
        case Operator::GE: return "GE";
        case Operator::EQ: return "EQ";
        case Operator::NE: return "NE";
    }
    return "?";
}

std::string_view to_string(IncentiveKind k) {
    return k == IncentiveKind::Reward ? "Reward" : "Sanction";
}

std::string_view to_string(CharacteristicKind k) {
    return k == CharacteristicKind::Activity ? "Activity" : "State";
}

std::string_view to_string(EntityKind k) {
    switch (k) {
        case EntityKind::Agent: return "agent";
        case EntityKind::Goal: return "goal";
        case EntityKind::Task: return "task";
        case EntityKind::Activity: return "activity";
        case EntityKind::Characteristic: return "characteristic";
        case EntityKind::Spec: return "spec";
        case EntityKind::State: return "state";
        case EntityKind::Evaluation: return "evaluation";
        case EntityKind::Incentive: return "incentive";
        case EntityKind::Mechanism: return "mechanism";
        case EntityKind::Resource: return "resource";
    }
    return "?";
}

std::string_view to_string(RelationKind k) {
    switch (k) {
        case RelationKind::MemberOf: return "MemberOf";
        case RelationKind::DependsOn: return "DependsOn";
        case RelationKind::StrategicComplements: return "StrategicComplements";
        case RelationKind::StrategicSubstitutes: return "StrategicSubstitutes";
    }
    return "?";
}

Relation Relation::member_of(Id member, Id collective) {
    return {RelationKind::MemberOf, std::move(member), std::move(collective), std::nullopt};
}

Relation Relation::depends_on(Id dependent, Id dependency) {
    return {RelationKind::DependsOn, std::move(dependent), std::move(dependency), std::nullopt};
}

Relation Relation::complements(Id w1, Id w2, Id state) {
    if (w2 < w1) std::swap(w1, w2);
    return {RelationKind::StrategicComplements, std::move(w1), std::move(w2), std::move(state)};
}

Relation Relation::substitutes(Id w1, Id w2, Id state) {
    if (w2 < w1) std::swap(w1, w2);
    return {RelationKind::StrategicSubstitutes, std::move(w1), std::move(w2), std::move(state)};
}

std::vector<EntityKind> OrgModel::kinds_of(const Id& id) const {
    std::vector<EntityKind> out;
    if (agents.contains(id)) out.push_back(EntityKind::Agent);
    if (goals.contains(id)) out.push_back(EntityKind::Goal);
    if (tasks.contains(id)) out.push_back(EntityKind::Task);
    if (activities.contains(id)) out.push_back(EntityKind::Activity);
    if (characteristics.contains(id)) out.push_back(EntityKind::Characteristic);
    if (specs.contains(id)) out.push_back(EntityKind::Spec);
    if (states.contains(id)) out.push_back(EntityKind::State);
    if (evaluations.contains(id)) out.push_back(EntityKind::Evaluation);
    if (incentives.contains(id)) out.push_back(EntityKind::Incentive);
    if (mechanisms.contains(id)) out.push_back(EntityKind::Mechanism);
    if (resources.contains(id)) out.push_back(EntityKind::Resource);
    return out;
}

std::optional<EntityKind> OrgModel::kind_of(const Id& id) const {
    auto kinds = kinds_of(id);
    if (kinds.empty()) return std::nullopt;
    return kinds.front();
}

std::size_t OrgModel::entity_count() const {
    return agents.size() + goals.size() + tasks.size() + activities.size() +
           characteristics.size() + specs.size() + states.size() + evaluations.size() +
           incentives.size() + mechanisms.size() + resources.size();
}

namespace {

template <typename Map>
void collect_keys(const Map& m, std::vector<Id>& out) {
    for (const auto& [id, _] : m) out.push_back(id);
}

void require(const OrgModel& model, const Id& id) {
    if (!model.contains(id)) throw UnknownEntityError(id);
}

// Direct members of each collective, read from MemberOf relations.
std::map<Id, IdSet> direct_members(const OrgModel& model) {
    std::map<Id, IdSet> out;
    for (const auto& r : model.relations)
        if (r.kind == RelationKind::MemberOf) out[r.second].insert(r.first);
    return out;
}

}  // namespace

std::vector<Id> OrgModel::entity_ids() const {
    std::vector<Id> out;
    collect_keys(agents, out);
    collect_keys(goals, out);
    collect_keys(tasks, out);
    collect_keys(activities, out);
    collect_keys(characteristics, out);
    collect_keys(specs, out);
    collect_keys(states, out);
    collect_keys(evaluations, out);
    collect_keys(incentives, out);
    collect_keys(mechanisms, out);
    collect_keys(resources, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IdSet members_of(const OrgModel& model, const Id& collective) {
    if (!model.agents.contains(collective)) throw UnknownEntityError(collective);
    const auto direct = direct_members(model);
    IdSet seen;
    std::vector<Id> stack{collective};
    while (!stack.empty()) {
        Id cur = std::move(stack.back());
        stack.pop_back();
        auto it = direct.find(cur);
        if (it == direct.end()) continue;
        for (const auto& m : it->second)
            if (seen.insert(m).second) stack.push_back(m);
    }
    // A membership cycle would otherwise list the collective as its own member.
    seen.erase(collective);
    return seen;
}

IdSet state_components(const OrgModel& model, const Id& state) {
    IdSet seen{state};
    std::vector<Id> stack{state};
    while (!stack.empty()) {
        Id cur = std::move(stack.back());
        stack.pop_back();
        auto it = model.states.find(cur);
        if (it == model.states.end()) continue;
        for (const auto& c : it->second.children)
            if (seen.insert(c).second) stack.push_back(c);
    }
    return seen;
}

IdSet contributors_to(const OrgModel& model, const Id& subject) {
    require(model, subject);
    if (auto it = model.activities.find(subject); it != model.activities.end())
        return it->second.performers;
    if (!model.states.contains(subject)) return {};
    const IdSet parts = state_components(model, subject);
    IdSet out;
    for (const auto& [_, act] : model.activities) {
        bool causes_part = std::any_of(act.causes.begin(), act.causes.end(),
                                       [&](const Id& s) { return parts.contains(s); });
        if (causes_part) out.insert(act.performers.begin(), act.performers.end());
    }
    return out;
}

bool is_sole_contributor(const OrgModel& model, const Id& agent, const Id& subject) {
    require(model, agent);
    const IdSet contributors = contributors_to(model, subject);
    return contributors.size() == 1 && *contributors.begin() == agent;
}

IdSet evaluatee_individuals(const OrgModel& model, const Id& evaluation) {
    auto it = model.evaluations.find(evaluation);
    if (it == model.evaluations.end()) throw UnknownEntityError(evaluation);
    IdSet out = it->second.evaluatees;
    for (const auto& e : it->second.evaluatees) {
        if (!model.agents.contains(e)) continue;
        IdSet members = members_of(model, e);
        out.insert(members.begin(), members.end());
    }
    return out;
}

IdSet incentives_of(const OrgModel& model, const Id& evaluation) {
    auto it = model.evaluations.find(evaluation);
    if (it == model.evaluations.end()) throw UnknownEntityError(evaluation);
    IdSet out;
    for (const auto& i : it->second.incentives)
        if (model.incentives.contains(i)) out.insert(i);
    for (const auto& [id, inc] : model.incentives)
        if (inc.evaluation == evaluation) out.insert(id);
    return out;
}

IdSet holders_of(const OrgModel& model, const Id& work) {
    if (auto it = model.activities.find(work); it != model.activities.end())
        return it->second.performers;
    if (auto it = model.tasks.find(work); it != model.tasks.end()) return {it->second.agent};
    throw UnknownEntityError(work);
}

}  // namespace orgrisk
