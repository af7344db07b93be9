#pragma once

// Typed in-memory organizational model: agents, the work they hold, the
// states that work causes, and the evaluations/incentives attached to it.
//
// Entities live in id-keyed ordered maps and all reference sets are ordered,
// so two models with the same content compare equal and iterate identically
// regardless of construction order.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orgrisk {

using Id = std::string;
using IdSet = std::set<Id>;

enum class AgentKind { Individual, Collective };
enum class Form { Atomic, Conjunction, Disjunction };
enum class Operator { LE, GE, EQ, NE };
enum class IncentiveKind { Reward, Sanction };
enum class CharacteristicKind { Activity, State };

enum class EntityKind {
    Agent,
    Goal,
    Task,
    Activity,
    Characteristic,
    Spec,
    State,
    Evaluation,
    Incentive,
    Mechanism,
    Resource,
};

std::string_view to_string(AgentKind k);
std::string_view to_string(Form f);
std::string_view to_string(Operator op);
std::string_view to_string(IncentiveKind k);
std::string_view to_string(CharacteristicKind k);
std::string_view to_string(EntityKind k);

struct Quantity {
    double num = 0.0;
    std::string unit;
    bool operator==(const Quantity&) const = default;
};
struct Text {
    std::string text;
    bool operator==(const Text&) const = default;
};
struct Flag {
    bool value = false;
    bool operator==(const Flag&) const = default;
};

// Scalar on the right-hand side of an atomic specification or state.
using Value = std::variant<Quantity, Text, Flag>;

struct Agent {
    Id id;
    AgentKind kind = AgentKind::Individual;
    std::string name;
    bool operator==(const Agent&) const = default;
};

struct Goal {
    Id id;
    Id desired_state;
    bool operator==(const Goal&) const = default;
};

struct Task {
    Id id;
    Id agent;
    Id goal;
    bool operator==(const Task&) const = default;
};

struct Activity {
    Id id;
    IdSet performers;
    std::optional<Id> part_of_task;
    IdSet causes;
    IdSet enabled_by;
    IdSet requires_resources;
    IdSet produces;
    IdSet characteristics;
    bool operator==(const Activity&) const = default;
};

struct Characteristic {
    Id id;
    CharacteristicKind kind = CharacteristicKind::Activity;
    std::string name;
    bool operator==(const Characteristic&) const = default;
};

// Shared shape of PerformanceSpecification and State: either an atomic
// (characteristic, operator, value) triple or a conjunction/disjunction of
// other nodes of the same kind.
struct Condition {
    Id id;
    Form form = Form::Atomic;
    std::optional<Id> characteristic;
    std::optional<Operator> op;
    std::optional<Value> value;
    IdSet children;
    bool operator==(const Condition&) const = default;
};

using PerformanceSpec = Condition;
using State = Condition;

struct Evaluation {
    Id id;
    IdSet evaluators;
    IdSet evaluatees;
    Id target;
    IdSet subjects;
    IdSet incentives;
    bool operator==(const Evaluation&) const = default;
};

struct Incentive {
    Id id;
    IncentiveKind kind = IncentiveKind::Reward;
    Id evaluation;
    IdSet recipients;
    bool operator==(const Incentive&) const = default;
};

struct CoordinationMechanism {
    Id id;
    IdSet participants;
    std::string description;
    bool operator==(const CoordinationMechanism&) const = default;
};

struct Resource {
    Id id;
    std::string name;
    bool operator==(const Resource&) const = default;
};

enum class RelationKind { MemberOf, DependsOn, StrategicComplements, StrategicSubstitutes };
std::string_view to_string(RelationKind k);

// Asserted relation. Field meaning by kind:
//   MemberOf(first = member, second = collective)
//   DependsOn(first = dependent work, second = work it depends on)
//   StrategicComplements/Substitutes(first < second, state)
// Use the factory functions; they put symmetric relations in canonical order.
struct Relation {
    RelationKind kind = RelationKind::DependsOn;
    Id first;
    Id second;
    std::optional<Id> state;

    static Relation member_of(Id member, Id collective);
    static Relation depends_on(Id dependent, Id dependency);
    static Relation complements(Id w1, Id w2, Id state);
    static Relation substitutes(Id w1, Id w2, Id state);

    bool is_symmetric() const {
        return kind == RelationKind::StrategicComplements ||
               kind == RelationKind::StrategicSubstitutes;
    }

    auto operator<=>(const Relation&) const = default;
    bool operator==(const Relation&) const = default;
};

struct OrgModel {
    std::map<Id, Agent> agents;
    std::map<Id, Goal> goals;
    std::map<Id, Task> tasks;
    std::map<Id, Activity> activities;
    std::map<Id, Characteristic> characteristics;
    std::map<Id, PerformanceSpec> specs;
    std::map<Id, State> states;
    std::map<Id, Evaluation> evaluations;
    std::map<Id, Incentive> incentives;
    std::map<Id, CoordinationMechanism> mechanisms;
    std::map<Id, Resource> resources;
    std::set<Relation> relations;

    bool operator==(const OrgModel&) const = default;

    void add(Agent a) { agents.insert_or_assign(a.id, std::move(a)); }
    void add(Goal g) { goals.insert_or_assign(g.id, std::move(g)); }
    void add(Task t) { tasks.insert_or_assign(t.id, std::move(t)); }
    void add(Activity a) { activities.insert_or_assign(a.id, std::move(a)); }
    void add(Characteristic c) { characteristics.insert_or_assign(c.id, std::move(c)); }
    void add(Evaluation e) { evaluations.insert_or_assign(e.id, std::move(e)); }
    void add(Incentive i) { incentives.insert_or_assign(i.id, std::move(i)); }
    void add(CoordinationMechanism m) { mechanisms.insert_or_assign(m.id, std::move(m)); }
    void add(Resource r) { resources.insert_or_assign(r.id, std::move(r)); }
    void add_state(State s) { states.insert_or_assign(s.id, std::move(s)); }
    void add_spec(PerformanceSpec s) { specs.insert_or_assign(s.id, std::move(s)); }
    void add(Relation r) { relations.insert(std::move(r)); }

    // All entity kinds registered under `id`. More than one entry means the
    // id is duplicated across kinds (a validation error).
    std::vector<EntityKind> kinds_of(const Id& id) const;
    std::optional<EntityKind> kind_of(const Id& id) const;
    bool contains(const Id& id) const { return kind_of(id).has_value(); }
    bool is_work(const Id& id) const { return tasks.contains(id) || activities.contains(id); }

    std::size_t entity_count() const;
    // Every entity id, sorted, duplicates across kinds collapsed.
    std::vector<Id> entity_ids() const;
};

// Transitive members of `collective` (members of members included).
// Individuals return the empty set. Throws UnknownEntityError.
IdSet members_of(const OrgModel& model, const Id& collective);

// Agents contributing to an activity (its performers) or a state (performers
// of activities causing it; complex states include contributors of any
// component). Throws UnknownEntityError.
IdSet contributors_to(const OrgModel& model, const Id& subject);

bool is_sole_contributor(const OrgModel& model, const Id& agent, const Id& subject);

// Direct evaluatees plus the transitive members of collective evaluatees.
IdSet evaluatee_individuals(const OrgModel& model, const Id& evaluation);

// Incentive ids attached to an evaluation (by either side of the link).
IdSet incentives_of(const OrgModel& model, const Id& evaluation);

// Agents that directly hold a piece of work: performers of an activity or
// the agent of a task.
IdSet holders_of(const OrgModel& model, const Id& work);

// `state` itself plus every state reachable through complex-state children.
IdSet state_components(const OrgModel& model, const Id& state);

}  // namespace orgrisk
