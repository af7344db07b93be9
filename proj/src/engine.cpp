#include "orgrisk/engine.hpp"

#include <algorithm>
#include <initializer_list>

#include "orgrisk/validate.hpp"

namespace orgrisk {

using datalog::Literal;
using datalog::Rule;
using datalog::RuleError;

namespace {

std::vector<datalog::Term> vars(std::initializer_list<const char*> names) {
    std::vector<datalog::Term> out;
    for (const char* n : names) out.push_back(datalog::var(n));
    return out;
}

datalog::Atom head(std::string_view p, std::initializer_list<const char*> names) {
    return {std::string(p), vars(names)};
}

Literal P(std::string_view p, std::initializer_list<const char*> names) {
    return datalog::pos(std::string(p), vars(names));
}

Literal N(std::string_view p, std::initializer_list<const char*> names) {
    return datalog::neg(std::string(p), vars(names));
}

Literal NE(const char* a, const char* b) { return datalog::not_equal(datalog::var(a), datalog::var(b)); }
Literal LT(const char* a, const char* b) { return datalog::less(datalog::var(a), datalog::var(b)); }

struct BaseSignature {
    std::string_view predicate;
    std::size_t arity;
};

constexpr BaseSignature kBase[] = {
    {pred::Individual, 1},   {pred::Collective, 1},    {pred::MemberOf, 2},
    {pred::Performs, 2},     {pred::HasTask, 2},       {pred::PartOfTask, 2},
    {pred::TaskGoal, 2},     {pred::DesiredState, 2},  {pred::IsActivity, 1},
    {pred::IsState, 1},      {pred::Causes, 2},        {pred::HasCharacteristic, 2},
    {pred::ComponentOf, 2},  {pred::Evaluator, 2},     {pred::Evaluatee, 2},
    {pred::Subject, 2},      {pred::Target, 2},        {pred::IncentiveOf, 2},
    {pred::Reward, 1},       {pred::Sanction, 1},      {pred::Recipient, 2},
    {pred::Participant, 2},  {pred::DependsOn, 2},     {pred::StrategicComplements, 3},
    {pred::StrategicSubstitutes, 3},
};

void add(datalog::Program& p, std::string name, Stratum s, datalog::Atom h,
         std::vector<Literal> body, bool canonical_pair = false) {
    p.add_rule(Rule{std::move(name), s, std::move(h), std::move(body), canonical_pair});
}

datalog::Program builtin_program() {
    using S = Stratum;
    datalog::Program p;
    for (const auto& b : kBase) p.declare_input(std::string(b.predicate), b.arity);

    // --- S0: closures over the asserted model -------------------------------
    add(p, "member-closure/direct", S::S0, head(pred::MemberOfClosure, {"A", "C"}),
        {P(pred::MemberOf, {"A", "C"})});
    add(p, "member-closure/step", S::S0, head(pred::MemberOfClosure, {"A", "C"}),
        {P(pred::MemberOf, {"A", "B"}), P(pred::MemberOfClosure, {"B", "C"})});

    add(p, "evaluatee-individual/direct", S::S0, head(pred::EvaluateeIndividual, {"E", "A"}),
        {P(pred::Evaluatee, {"E", "A"})});
    add(p, "evaluatee-individual/member", S::S0, head(pred::EvaluateeIndividual, {"E", "A"}),
        {P(pred::Evaluatee, {"E", "C"}), P(pred::MemberOfClosure, {"A", "C"})});
    add(p, "recipient-individual/direct", S::S0, head(pred::RecipientIndividual, {"I", "A"}),
        {P(pred::Recipient, {"I", "A"})});
    add(p, "recipient-individual/member", S::S0, head(pred::RecipientIndividual, {"I", "A"}),
        {P(pred::Recipient, {"I", "C"}), P(pred::MemberOfClosure, {"A", "C"})});
    add(p, "leaf-evaluatee", S::S0, head(pred::LeafEvaluatee, {"E", "A"}),
        {P(pred::EvaluateeIndividual, {"E", "A"}), P(pred::Individual, {"A"})});
    add(p, "co-evaluatee", S::S0, head(pred::CoEvaluatee, {"E", "A", "B"}),
        {P(pred::LeafEvaluatee, {"E", "A"}), P(pred::LeafEvaluatee, {"E", "B"}), NE("A", "B")});

    add(p, "holds/performs", S::S0, head(pred::Holds, {"A", "W"}), {P(pred::Performs, {"A", "W"})});
    add(p, "holds/task", S::S0, head(pred::Holds, {"A", "W"}), {P(pred::HasTask, {"A", "W"})});

    add(p, "state-part/self", S::S0, head(pred::StatePart, {"S", "S"}), {P(pred::IsState, {"S"})});
    add(p, "state-part/child", S::S0, head(pred::StatePart, {"X", "Z"}),
        {P(pred::ComponentOf, {"X", "Y"}), P(pred::StatePart, {"Y", "Z"})});
    add(p, "part-of-goal", S::S0, head(pred::PartOfGoal, {"S"}),
        {P(pred::DesiredState, {"G", "D"}), P(pred::StatePart, {"S", "D"})});

    add(p, "subject-covers/activity", S::S0, head(pred::SubjectCovers, {"E", "W"}),
        {P(pred::Subject, {"E", "W"}), P(pred::IsActivity, {"W"})});
    add(p, "subject-covers/caused-state", S::S0, head(pred::SubjectCovers, {"E", "W"}),
        {P(pred::Subject, {"E", "S"}), P(pred::Causes, {"W", "S"})});
    add(p, "appraises/target", S::S0, head(pred::Appraises, {"E", "X"}), {P(pred::Target, {"E", "X"})});
    add(p, "appraises/subject", S::S0, head(pred::Appraises, {"E", "X"}),
        {P(pred::Subject, {"E", "X"})});
    add(p, "evaluated/activity", S::S0, head(pred::Evaluated, {"A", "W"}),
        {P(pred::EvaluateeIndividual, {"E", "A"}), P(pred::SubjectCovers, {"E", "W"})});
    // A task is evaluated through its goal: the desired state (or a part of
    // it) is the target or a subject of an evaluation of the agent.
    add(p, "evaluated/task-goal", S::S0, head(pred::Evaluated, {"A", "T"}),
        {P(pred::TaskGoal, {"T", "G"}), P(pred::DesiredState, {"G", "D"}),
         P(pred::StatePart, {"X", "D"}), P(pred::Appraises, {"E", "X"}),
         P(pred::EvaluateeIndividual, {"E", "A"})});
    add(p, "state-appraised", S::S0, head(pred::StateAppraised, {"S"}),
        {P(pred::Appraises, {"E", "X"}), P(pred::StatePart, {"S", "X"})});

    add(p, "contributor/performs", S::S0, head(pred::Contributor, {"A", "W"}),
        {P(pred::Performs, {"A", "W"})});
    add(p, "contributor/causes", S::S0, head(pred::Contributor, {"A", "S"}),
        {P(pred::Performs, {"A", "W"}), P(pred::Causes, {"W", "S"})});
    add(p, "contributor/component", S::S0, head(pred::Contributor, {"A", "P"}),
        {P(pred::ComponentOf, {"C", "P"}), P(pred::Contributor, {"A", "C"})});
    add(p, "other-contributor", S::S0, head(pred::OtherContributor, {"A", "X"}),
        {P(pred::Contributor, {"A", "X"}), P(pred::Contributor, {"B", "X"}), NE("A", "B")});
    add(p, "sole-contributor", S::S0, head(pred::SoleContributor, {"A", "X"}),
        {P(pred::Contributor, {"A", "X"}), N(pred::OtherContributor, {"A", "X"})});
    add(p, "has-sole-subject", S::S0, head(pred::HasSoleSubject, {"A", "E"}),
        {P(pred::Subject, {"E", "X"}), P(pred::SoleContributor, {"A", "X"})});

    add(p, "mechanism-covers", S::S0, head(pred::MechanismCovers, {"A", "B"}),
        {P(pred::Participant, {"M", "A"}), P(pred::Participant, {"M", "B"}), LT("A", "B")});

    // --- S1: positive dependence --------------------------------------------
    add(p, "predictive-need", S::S1, head(pred::PredictiveNeed, {"A1", "A2", "W1", "W2"}),
        {P(pred::DependsOn, {"W1", "W2"}), P(pred::Holds, {"A1", "W1"}),
         P(pred::Holds, {"A2", "W2"}), NE("A1", "A2")});
    add(p, "outcome-dependence", S::S1, head(pred::OutcomeDependentOn, {"A1", "A2", "E"}),
        {P(pred::CoEvaluatee, {"E", "A1", "A2"})});
    add(p, "epistemic-dependence", S::S1,
        head(pred::EpistemicallyDependentOn, {"A1", "A2", "E"}),
        {P(pred::PredictiveNeed, {"A1", "A2", "W1", "W2"}), P(pred::SubjectCovers, {"E", "W1"}),
         P(pred::IncentiveOf, {"I", "E"}), P(pred::RecipientIndividual, {"I", "A1"})});
    add(p, "reward-dependence/shared-reward", S::S1,
        head(pred::RewardDependentOn, {"A1", "A2", "E"}),
        {P(pred::OutcomeDependentOn, {"A1", "A2", "E"}), P(pred::IncentiveOf, {"I", "E"}),
         P(pred::Reward, {"I"}), P(pred::RecipientIndividual, {"I", "A1"}),
         P(pred::RecipientIndividual, {"I", "A2"})});
    add(p, "reward-dependence/epistemic", S::S1, head(pred::RewardDependentOn, {"A1", "A2", "E"}),
        {P(pred::EpistemicallyDependentOn, {"A1", "A2", "E"})});
    add(p, "coordination-need", S::S1, head(pred::CoordinationNeed, {"A1", "A2"}),
        {P(pred::EpistemicallyDependentOn, {"A1", "A2", "E"})}, true);

    // --- S2: risks over absence ---------------------------------------------
    add(p, "coordination-risk", S::S2, head(pred::CoordinationRisk, {"A1", "A2"}),
        {P(pred::CoordinationNeed, {"A1", "A2"}), N(pred::MechanismCovers, {"A1", "A2"})});
    add(p, "free-riding", S::S2, head(pred::FreeRidingRisk, {"A", "E"}),
        {P(pred::CoEvaluatee, {"E", "A", "B"}), N(pred::HasSoleSubject, {"A", "E"})});
    add(p, "shirking", S::S2, head(pred::ShirkRisk, {"A", "W"}),
        {P(pred::Holds, {"A", "W"}), N(pred::Evaluated, {"A", "W"})});
    add(p, "sub-goal-optimization", S::S2,
        head(pred::SubGoalOptimizationRisk, {"A1", "A2", "S"}),
        {P(pred::StrategicComplements, {"W1", "W2", "S"}), P(pred::PartOfGoal, {"S"}),
         P(pred::Holds, {"A1", "W1"}), P(pred::Holds, {"A2", "W2"}), NE("A1", "A2"),
         P(pred::Evaluated, {"A1", "W1"}), P(pred::Evaluated, {"A2", "W2"}),
         N(pred::StateAppraised, {"S"})},
        true);

    // --- S3: cooperation risk -----------------------------------------------
    add(p, std::string(kCooperationViaFreeRiding), S::S3, head(pred::CooperationRisk, {"A1", "A2"}),
        {P(pred::FreeRidingRisk, {"A1", "E"}), P(pred::CoEvaluatee, {"E", "A1", "A2"})}, true);
    add(p, std::string(kCooperationViaShirking), S::S3, head(pred::CooperationRisk, {"A1", "A2"}),
        {P(pred::EpistemicallyDependentOn, {"A1", "A2", "E"}),
         P(pred::PredictiveNeed, {"A1", "A2", "W1", "W2"}), P(pred::SubjectCovers, {"E", "W1"}),
         P(pred::ShirkRisk, {"A2", "W2"})},
        true);
    add(p, std::string(kCooperationViaSubGoal), S::S3, head(pred::CooperationRisk, {"A1", "A2"}),
        {P(pred::SubGoalOptimizationRisk, {"A1", "A2", "S"})}, true);
    return p;
}

const datalog::Program& builtin() {
    static const datalog::Program program = builtin_program();
    return program;
}

// --- argument sorts ----------------------------------------------------------

enum class Sort { Agent, Work, Activity, Task, State, Evaluation, Incentive, Mechanism, Goal,
                  Target, Subjectable, Appraisable, Characteristic };

bool has_sort(const OrgModel& m, const std::string& id, Sort s) {
    switch (s) {
        case Sort::Agent: return m.agents.contains(id);
        case Sort::Work: return m.is_work(id);
        case Sort::Activity: return m.activities.contains(id);
        case Sort::Task: return m.tasks.contains(id);
        case Sort::State: return m.states.contains(id);
        case Sort::Evaluation: return m.evaluations.contains(id);
        case Sort::Incentive: return m.incentives.contains(id);
        case Sort::Mechanism: return m.mechanisms.contains(id);
        case Sort::Goal: return m.goals.contains(id);
        case Sort::Target: return m.states.contains(id) || m.specs.contains(id);
        case Sort::Appraisable:
            return m.activities.contains(id) || m.states.contains(id) || m.specs.contains(id);
        case Sort::Subjectable: return m.activities.contains(id) || m.states.contains(id);
        case Sort::Characteristic: return m.characteristics.contains(id);
    }
    return false;
}

const std::map<std::string_view, std::vector<Sort>>& signatures() {
    using S = Sort;
    static const std::map<std::string_view, std::vector<Sort>> table = {
        {pred::Individual, {S::Agent}},
        {pred::Collective, {S::Agent}},
        {pred::MemberOf, {S::Agent, S::Agent}},
        {pred::Performs, {S::Agent, S::Activity}},
        {pred::HasTask, {S::Agent, S::Task}},
        {pred::PartOfTask, {S::Activity, S::Task}},
        {pred::TaskGoal, {S::Task, S::Goal}},
        {pred::DesiredState, {S::Goal, S::State}},
        {pred::IsActivity, {S::Activity}},
        {pred::IsState, {S::State}},
        {pred::Causes, {S::Activity, S::State}},
        {pred::HasCharacteristic, {S::Activity, S::Characteristic}},
        {pred::ComponentOf, {S::State, S::State}},
        {pred::Evaluator, {S::Evaluation, S::Agent}},
        {pred::Evaluatee, {S::Evaluation, S::Agent}},
        {pred::Subject, {S::Evaluation, S::Subjectable}},
        {pred::Target, {S::Evaluation, S::Target}},
        {pred::IncentiveOf, {S::Incentive, S::Evaluation}},
        {pred::Reward, {S::Incentive}},
        {pred::Sanction, {S::Incentive}},
        {pred::Recipient, {S::Incentive, S::Agent}},
        {pred::Participant, {S::Mechanism, S::Agent}},
        {pred::DependsOn, {S::Work, S::Work}},
        {pred::StrategicComplements, {S::Work, S::Work, S::State}},
        {pred::StrategicSubstitutes, {S::Work, S::Work, S::State}},
        {pred::MemberOfClosure, {S::Agent, S::Agent}},
        {pred::EvaluateeIndividual, {S::Evaluation, S::Agent}},
        {pred::RecipientIndividual, {S::Incentive, S::Agent}},
        {pred::LeafEvaluatee, {S::Evaluation, S::Agent}},
        {pred::CoEvaluatee, {S::Evaluation, S::Agent, S::Agent}},
        {pred::Holds, {S::Agent, S::Work}},
        {pred::StatePart, {S::State, S::State}},
        {pred::PartOfGoal, {S::State}},
        {pred::SubjectCovers, {S::Evaluation, S::Activity}},
        {pred::Appraises, {S::Evaluation, S::Appraisable}},
        {pred::Evaluated, {S::Agent, S::Work}},
        {pred::StateAppraised, {S::State}},
        {pred::Contributor, {S::Agent, S::Subjectable}},
        {pred::OtherContributor, {S::Agent, S::Subjectable}},
        {pred::SoleContributor, {S::Agent, S::Subjectable}},
        {pred::HasSoleSubject, {S::Agent, S::Evaluation}},
        {pred::MechanismCovers, {S::Agent, S::Agent}},
        {pred::PredictiveNeed, {S::Agent, S::Agent, S::Work, S::Work}},
        {pred::OutcomeDependentOn, {S::Agent, S::Agent, S::Evaluation}},
        {pred::EpistemicallyDependentOn, {S::Agent, S::Agent, S::Evaluation}},
        {pred::RewardDependentOn, {S::Agent, S::Agent, S::Evaluation}},
        {pred::CoordinationNeed, {S::Agent, S::Agent}},
        {pred::CoordinationRisk, {S::Agent, S::Agent}},
        {pred::FreeRidingRisk, {S::Agent, S::Evaluation}},
        {pred::ShirkRisk, {S::Agent, S::Work}},
        {pred::SubGoalOptimizationRisk, {S::Agent, S::Agent, S::State}},
        {pred::CooperationRisk, {S::Agent, S::Agent}},
    };
    return table;
}

void check_sorts(const OrgModel& model, const std::map<Fact, Stratum>& facts) {
    const auto& table = signatures();
    for (const auto& [f, _] : facts) {
        auto it = table.find(f.predicate);
        if (it == table.end()) continue;
        bool ok = it->second.size() == f.args.size();
        for (std::size_t i = 0; ok && i < f.args.size(); ++i) ok = has_sort(model, f.args[i], it->second[i]);
        if (!ok) throw Error("IllSortedFact", "fact " + to_string(f) + " violates its argument sorts");
    }
}

// Relation rules are stored canonically already; this only needs to read
// the model.
void emit(std::vector<Fact>& out, std::string_view p, std::vector<std::string> args) {
    out.push_back(Fact{std::string(p), std::move(args)});
}

}  // namespace

const std::vector<std::string_view>& dependence_predicates() {
    static const std::vector<std::string_view> v = {
        pred::PredictiveNeed, pred::OutcomeDependentOn, pred::EpistemicallyDependentOn,
        pred::RewardDependentOn, pred::CoordinationNeed};
    return v;
}

const std::vector<std::string_view>& risk_predicates() {
    static const std::vector<std::string_view> v = {
        pred::CoordinationRisk, pred::FreeRidingRisk, pred::ShirkRisk,
        pred::SubGoalOptimizationRisk, pred::CooperationRisk};
    return v;
}

bool is_known_predicate(std::string_view predicate) {
    return signatures().contains(predicate);
}

std::vector<Fact> assert_model(const OrgModel& m) {
    std::vector<Fact> out;
    for (const auto& [id, a] : m.agents)
        emit(out, a.kind == AgentKind::Individual ? pred::Individual : pred::Collective, {id});
    for (const auto& [id, t] : m.tasks) {
        emit(out, pred::HasTask, {t.agent, id});
        emit(out, pred::TaskGoal, {id, t.goal});
    }
    for (const auto& [id, g] : m.goals) emit(out, pred::DesiredState, {id, g.desired_state});
    for (const auto& [id, a] : m.activities) {
        emit(out, pred::IsActivity, {id});
        for (const auto& p : a.performers) emit(out, pred::Performs, {p, id});
        if (a.part_of_task) emit(out, pred::PartOfTask, {id, *a.part_of_task});
        for (const auto& s : a.causes) emit(out, pred::Causes, {id, s});
        for (const auto& c : a.characteristics) emit(out, pred::HasCharacteristic, {id, c});
    }
    for (const auto& [id, s] : m.states) {
        emit(out, pred::IsState, {id});
        for (const auto& c : s.children) emit(out, pred::ComponentOf, {c, id});
    }
    for (const auto& [id, e] : m.evaluations) {
        for (const auto& a : e.evaluators) emit(out, pred::Evaluator, {id, a});
        for (const auto& a : e.evaluatees) emit(out, pred::Evaluatee, {id, a});
        for (const auto& s : e.subjects) emit(out, pred::Subject, {id, s});
        if (!e.target.empty()) emit(out, pred::Target, {id, e.target});
        for (const auto& i : e.incentives) emit(out, pred::IncentiveOf, {i, id});
    }
    for (const auto& [id, inc] : m.incentives) {
        emit(out, pred::IncentiveOf, {id, inc.evaluation});
        emit(out, inc.kind == IncentiveKind::Reward ? pred::Reward : pred::Sanction, {id});
        for (const auto& r : inc.recipients) emit(out, pred::Recipient, {id, r});
    }
    for (const auto& [id, mech] : m.mechanisms)
        for (const auto& a : mech.participants) emit(out, pred::Participant, {id, a});
    for (const auto& r : m.relations) {
        switch (r.kind) {
            case RelationKind::MemberOf: emit(out, pred::MemberOf, {r.first, r.second}); break;
            case RelationKind::DependsOn: emit(out, pred::DependsOn, {r.first, r.second}); break;
            case RelationKind::StrategicComplements:
                emit(out, pred::StrategicComplements, {r.first, r.second, r.state.value_or("")});
                break;
            case RelationKind::StrategicSubstitutes:
                emit(out, pred::StrategicSubstitutes, {r.first, r.second, r.state.value_or("")});
                break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- InferenceResult ---------------------------------------------------------

std::optional<Stratum> InferenceResult::stratum_of(const Fact& f) const {
    auto it = facts.find(f);
    if (it == facts.end()) return std::nullopt;
    return it->second;
}

bool InferenceResult::is_asserted(const Fact& f) const {
    auto it = derivations.find(f);
    if (it == derivations.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [](const Derivation& d) { return d.rule == kAssertedRule; });
}

std::vector<Fact> InferenceResult::of(std::string_view predicate) const {
    std::vector<Fact> out;
    for (const auto& [f, _] : facts)
        if (f.predicate == predicate) out.push_back(f);
    return out;
}

std::vector<Fact> InferenceResult::in(Stratum s) const {
    std::vector<Fact> out;
    for (const auto& [f, st] : facts)
        if (st == s) out.push_back(f);
    return out;
}

const std::vector<Derivation>& InferenceResult::derivations_of(const Fact& f) const {
    static const std::vector<Derivation> none;
    auto it = derivations.find(f);
    return it == derivations.end() ? none : it->second;
}

// --- Engine ------------------------------------------------------------------

Engine::Engine() : program_(builtin()) {}

Engine& Engine::register_domain_rule(Rule rule) {
    if (rule.stratum != Stratum::S0 && rule.stratum != Stratum::S1)
        throw RuleError("InvalidStratum", "domain rule '" + rule.name + "' targets " +
                                              std::string(to_string(rule.stratum)) +
                                              "; extensions may only add S0/S1 facts");
    for (const auto& lit : rule.body) {
        if (lit.kind == Literal::Kind::Negative)
            throw RuleError("InvalidStratum",
                            "domain rule '" + rule.name + "' negates " + lit.atom.predicate);
        if (lit.kind == Literal::Kind::Positive && program_.label(lit.atom.predicate) > rule.stratum)
            throw RuleError("InvalidStratum", "domain rule '" + rule.name + "' reads " +
                                                  lit.atom.predicate + " from a higher stratum");
    }
    const std::string& h = rule.head.predicate;
    if (program_.arity(h) && program_.label(h) != rule.stratum)
        throw RuleError("InvalidStratum", "domain rule '" + rule.name + "' derives " + h +
                                              ", which belongs to " +
                                              std::string(to_string(program_.label(h))));
    for (const auto& r : program_.rules())
        if (r.name == rule.name)
            throw RuleError("InvalidRule", "a rule named '" + rule.name + "' already exists");
    program_.add_rule(std::move(rule));
    return *this;
}

InferenceResult Engine::infer(const OrgModel& model) const {
    auto violations = validate_model(model);
    if (has_errors(violations)) throw InvalidModelError(std::move(violations));

    datalog::Fixpoint fp = datalog::evaluate(program_, assert_model(model));
    check_sorts(model, fp.facts);
    InferenceResult out;
    out.model = std::make_shared<const OrgModel>(model);
    out.facts = std::move(fp.facts);
    out.derivations = std::move(fp.derivations);
    return out;
}

InferenceResult infer(const OrgModel& model) {
    static const Engine engine;
    return engine.infer(model);
}

std::vector<Fact> derive(const std::vector<Fact>& inputs, std::string_view predicate) {
    datalog::Fixpoint fp = datalog::evaluate(builtin(), inputs);
    std::vector<Fact> out;
    for (const auto& [f, _] : fp.facts)
        if (f.predicate == predicate) out.push_back(f);
    return out;
}

std::vector<Fact> derive_predictive_needs(const OrgModel& m) {
    return derive(assert_model(m), pred::PredictiveNeed);
}
std::vector<Fact> derive_outcome_dependence(const OrgModel& m) {
    return derive(assert_model(m), pred::OutcomeDependentOn);
}
std::vector<Fact> derive_epistemic_dependence(const OrgModel& m) {
    return derive(assert_model(m), pred::EpistemicallyDependentOn);
}
std::vector<Fact> derive_reward_dependence(const OrgModel& m) {
    return derive(assert_model(m), pred::RewardDependentOn);
}
std::vector<Fact> derive_coordination_needs(const std::vector<Fact>& epistemic) {
    return derive(epistemic, pred::CoordinationNeed);
}
std::vector<Fact> derive_coordination_risks(const OrgModel& m) {
    return derive(assert_model(m), pred::CoordinationRisk);
}
std::vector<Fact> derive_free_riding_risks(const OrgModel& m) {
    return derive(assert_model(m), pred::FreeRidingRisk);
}
std::vector<Fact> derive_shirk_risks(const OrgModel& m) {
    return derive(assert_model(m), pred::ShirkRisk);
}
std::vector<Fact> derive_subgoal_optimization_risks(const OrgModel& m) {
    return derive(assert_model(m), pred::SubGoalOptimizationRisk);
}
std::vector<Fact> derive_cooperation_risks(const std::vector<Fact>& facts) {
    return derive(facts, pred::CooperationRisk);
}

}  // namespace orgrisk
