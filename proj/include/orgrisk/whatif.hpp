#pragma once

// What-if analysis: declarative edits to a model, applied atomically, and
// the difference they make to the inferred dependences and risks.
//
// Intervention documents:
//   {"formatVersion": "1.0", "ops": [
//     {"op": "AddEntity", "collection": "evaluations", "record": {...}},
//     {"op": "RemoveEntity", "id": "e_rm"},
//     {"op": "AddRelation", "relation": {...}},
//     {"op": "RemoveRelation", "relation": {...}},
//     {"op": "ModifyField", "collection": "activities", "id": "a_review",
//      "field": "performers", "value": ["pr", "wim"]},
//     {"op": "Template", "template": "add-coordination-mechanism",
//      "args": {"participants": ["rm", "wim"]}}]}
// Templates are expanded to primitive ops while parsing.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orgrisk/engine.hpp"
#include "orgrisk/errors.hpp"
#include "orgrisk/validate.hpp"

namespace orgrisk {

enum class OpKind { AddEntity, RemoveEntity, AddRelation, RemoveRelation, ModifyField };
std::string_view to_string(OpKind k);

struct InterventionOp {
    OpKind op = OpKind::AddEntity;
    std::optional<EntityKind> kind;  // RemoveEntity resolves it from the id when absent
    Id id;
    std::string field;               // ModifyField only
    nlohmann::json payload;          // record, relation record or new field value

    bool operator==(const InterventionOp&) const = default;
};

struct Intervention {
    std::vector<InterventionOp> ops;

    bool empty() const { return ops.empty(); }
    Intervention& then(const Intervention& other);
    bool operator==(const Intervention&) const = default;
};

InterventionOp add_entity(const OrgModel& source, EntityKind kind, const Id& id);
InterventionOp add_entity(EntityKind kind, nlohmann::json record);
InterventionOp remove_entity(const Id& id);
InterventionOp add_relation(const Relation& r);
InterventionOp remove_relation(const Relation& r);
InterventionOp modify_field(EntityKind kind, const Id& id, std::string field, nlohmann::json value);

// A removal or modification names something the model does not have.
class UnknownTargetError : public Error {
public:
    explicit UnknownTargetError(const std::string& message) : Error("UnknownTarget", message) {}
};

// The edited model would fail validation; nothing was applied.
class WouldInvalidateError : public Error {
public:
    explicit WouldInvalidateError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Applies every op in order to a copy of `base`. All-or-nothing: throws
// UnknownTargetError, WouldInvalidateError, or ScenarioParseError for
// malformed payloads, leaving `base` untouched.
OrgModel apply_intervention(const OrgModel& base, const Intervention& iv);

// --- templates ---------------------------------------------------------------

// Mechanism "m_<a>_<b>..." over `participants` unless `id` is given.
Intervention add_coordination_mechanism(const IdSet& participants, std::optional<Id> id = {});

// Evaluation of one agent on one subject, with an optional reward.
Intervention add_individual_evaluation(const Id& id, const Id& evaluator, const Id& evaluatee,
                                       const Id& subject, const Id& target,
                                       std::optional<Id> reward = {});

// One evaluation over several evaluatees with a reward shared by all of them.
Intervention add_joint_evaluation(const Id& id, const IdSet& evaluators, const IdSet& evaluatees,
                                  const Id& target, const IdSet& subjects, const Id& reward);

const std::vector<std::string_view>& template_names();

// --- documents ---------------------------------------------------------------

Intervention intervention_from_json(const nlohmann::json& doc);
nlohmann::json intervention_to_json(const Intervention& iv);
// Throws ScenarioParseError with located errors.
Intervention parse_intervention(std::string_view text);

// --- diffs -------------------------------------------------------------------

struct InferenceDiff {
    std::vector<Fact> added;     // canonical order
    std::vector<Fact> removed;
    std::map<std::string, std::size_t> unchanged;  // per predicate

    bool empty() const { return added.empty() && removed.empty(); }
    bool operator==(const InferenceDiff&) const = default;
};

// Compares the S1-S3 facts of two results.
InferenceDiff diff_inferences(const InferenceResult& before, const InferenceResult& after);

nlohmann::json diff_to_json(const InferenceDiff& d);
InferenceDiff diff_from_json(const nlohmann::json& doc);

// "no changes", or one "- Fact" / "+ Fact" line per change.
std::string render_diff(const InferenceDiff& d);

}  // namespace orgrisk
