#pragma once

// Ontology inference: turns an OrgModel into base facts, runs the built-in
// dependence and risk rules (plus any registered domain rules) to fixpoint
// and packages the result with full provenance.

#include <map>
#include <memory>
#include <string_view>
#include <vector>

#include "orgrisk/datalog.hpp"
#include "orgrisk/fact.hpp"
#include "orgrisk/model.hpp"

namespace orgrisk {

namespace pred {
// Base facts read off the model.
inline constexpr std::string_view Individual = "Individual";
inline constexpr std::string_view Collective = "Collective";
inline constexpr std::string_view MemberOf = "MemberOf";
inline constexpr std::string_view Performs = "Performs";
inline constexpr std::string_view HasTask = "HasTask";
inline constexpr std::string_view PartOfTask = "PartOfTask";
inline constexpr std::string_view TaskGoal = "TaskGoal";
inline constexpr std::string_view DesiredState = "DesiredState";
inline constexpr std::string_view IsActivity = "Activity";
inline constexpr std::string_view IsState = "State";
inline constexpr std::string_view Causes = "Causes";
inline constexpr std::string_view HasCharacteristic = "HasCharacteristic";
inline constexpr std::string_view ComponentOf = "ComponentOf";
inline constexpr std::string_view Evaluator = "Evaluator";
inline constexpr std::string_view Evaluatee = "Evaluatee";
inline constexpr std::string_view Subject = "Subject";
inline constexpr std::string_view Target = "Target";
inline constexpr std::string_view IncentiveOf = "IncentiveOf";
inline constexpr std::string_view Reward = "Reward";
inline constexpr std::string_view Sanction = "Sanction";
inline constexpr std::string_view Recipient = "Recipient";
inline constexpr std::string_view Participant = "Participant";
inline constexpr std::string_view DependsOn = "DependsOn";
inline constexpr std::string_view StrategicComplements = "StrategicComplements";
inline constexpr std::string_view StrategicSubstitutes = "StrategicSubstitutes";

// S0 closure.
inline constexpr std::string_view MemberOfClosure = "MemberOfClosure";
inline constexpr std::string_view EvaluateeIndividual = "EvaluateeIndividual";
inline constexpr std::string_view RecipientIndividual = "RecipientIndividual";
inline constexpr std::string_view LeafEvaluatee = "LeafEvaluatee";
inline constexpr std::string_view CoEvaluatee = "CoEvaluatee";
inline constexpr std::string_view Holds = "Holds";
inline constexpr std::string_view StatePart = "StatePart";
inline constexpr std::string_view PartOfGoal = "PartOfGoal";
inline constexpr std::string_view SubjectCovers = "SubjectCovers";
inline constexpr std::string_view Appraises = "Appraises";
inline constexpr std::string_view Evaluated = "Evaluated";
inline constexpr std::string_view StateAppraised = "StateAppraised";
inline constexpr std::string_view Contributor = "Contributor";
inline constexpr std::string_view OtherContributor = "OtherContributor";
inline constexpr std::string_view SoleContributor = "SoleContributor";
inline constexpr std::string_view HasSoleSubject = "HasSoleSubject";
inline constexpr std::string_view MechanismCovers = "MechanismCovers";

// S1.
inline constexpr std::string_view PredictiveNeed = "PredictiveNeed";
inline constexpr std::string_view OutcomeDependentOn = "OutcomeDependentOn";
inline constexpr std::string_view EpistemicallyDependentOn = "EpistemicallyDependentOn";
inline constexpr std::string_view RewardDependentOn = "RewardDependentOn";
inline constexpr std::string_view CoordinationNeed = "CoordinationNeed";

// S2.
inline constexpr std::string_view CoordinationRisk = "CoordinationRisk";
inline constexpr std::string_view FreeRidingRisk = "FreeRidingRisk";
inline constexpr std::string_view ShirkRisk = "ShirkRisk";
inline constexpr std::string_view SubGoalOptimizationRisk = "SubGoalOptimizationRisk";

// S3.
inline constexpr std::string_view CooperationRisk = "CooperationRisk";
}  // namespace pred

// Predicates an analyst asks about: the S1-S3 dependence and risk relations.
const std::vector<std::string_view>& dependence_predicates();
const std::vector<std::string_view>& risk_predicates();

// Every predicate the built-in program knows (base, closure, S1-S3).
bool is_known_predicate(std::string_view predicate);

// Base facts encoding `model`.
std::vector<Fact> assert_model(const OrgModel& model);

struct InferenceResult {
    std::shared_ptr<const OrgModel> model;
    std::map<Fact, Stratum> facts;
    std::map<Fact, std::vector<Derivation>> derivations;

    bool contains(const Fact& f) const { return facts.contains(f); }
    std::optional<Stratum> stratum_of(const Fact& f) const;
    bool is_asserted(const Fact& f) const;
    std::vector<Fact> of(std::string_view predicate) const;
    std::vector<Fact> in(Stratum s) const;
    const std::vector<Derivation>& derivations_of(const Fact& f) const;

    // Equality of the fact store and provenance (the model pointer is not
    // compared).
    bool same_content(const InferenceResult& other) const {
        return facts == other.facts && derivations == other.derivations;
    }
};

// Built-in rules plus registered domain extensions.
class Engine {
public:
    Engine();

    // Domain extensions add positive S0/S1 knowledge (e.g. DependsOn from
    // geographic overlap). Throws datalog::RuleError with code
    // "InvalidStratum" for S2/S3 rules, negated literals, heads that belong
    // to another stratum, or bodies reading a higher stratum; "InvalidRule"
    // for malformed rules.
    Engine& register_domain_rule(datalog::Rule rule);

    // Throws InvalidModelError when validate_model reports Errors, and
    // Error("IllSortedFact") if a domain rule derives an ill-typed fact.
    InferenceResult infer(const OrgModel& model) const;

    const datalog::Program& program() const { return program_; }

private:
    datalog::Program program_;
};

InferenceResult infer(const OrgModel& model);

// Runs the built-in program over arbitrary input facts and returns the facts
// of one predicate. The derive_* helpers below are thin wrappers.
std::vector<Fact> derive(const std::vector<Fact>& inputs, std::string_view predicate);

std::vector<Fact> derive_predictive_needs(const OrgModel& model);
std::vector<Fact> derive_outcome_dependence(const OrgModel& model);
std::vector<Fact> derive_epistemic_dependence(const OrgModel& model);
std::vector<Fact> derive_reward_dependence(const OrgModel& model);
std::vector<Fact> derive_coordination_needs(const std::vector<Fact>& epistemic_dependences);
std::vector<Fact> derive_coordination_risks(const OrgModel& model);
std::vector<Fact> derive_free_riding_risks(const OrgModel& model);
std::vector<Fact> derive_shirk_risks(const OrgModel& model);
std::vector<Fact> derive_subgoal_optimization_risks(const OrgModel& model);
std::vector<Fact> derive_cooperation_risks(const std::vector<Fact>& facts);

// Rule names that appear in provenance, for the three cooperation clauses.
inline constexpr std::string_view kCooperationViaFreeRiding = "cooperation/free-riding";
inline constexpr std::string_view kCooperationViaShirking = "cooperation/shirking";
inline constexpr std::string_view kCooperationViaSubGoal = "cooperation/sub-goal-optimization";

}  // namespace orgrisk
