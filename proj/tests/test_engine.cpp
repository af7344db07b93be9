#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "orgrisk/engine.hpp"
#include "orgrisk/validate.hpp"

using namespace orgrisk;
using orgrisk::testing::F;
using orgrisk::testing::golden;

namespace {

std::set<Fact> as_set(const std::vector<Fact>& v) { return {v.begin(), v.end()}; }

std::set<Fact> derived(const InferenceResult& r) {
    std::set<Fact> out;
    for (const auto& [f, s] : r.facts)
        if (s != Stratum::S0) out.insert(f);
    return out;
}

// Two agents sharing one evaluation on `target`, each performing one
// activity that causes `joint`.
OrgModel pair_model(IncentiveKind incentive) {
    OrgModel m;
    m.add(Agent{"boss", AgentKind::Individual, ""});
    m.add(Agent{"a", AgentKind::Individual, ""});
    m.add(Agent{"b", AgentKind::Individual, ""});
    m.add(Characteristic{"c", CharacteristicKind::State, ""});
    m.add_state(State{"joint", Form::Atomic, "c", Operator::GE, Quantity{1, "u"}, {}});
    m.add(Activity{"wa", {"a"}, {}, {"joint"}, {}, {}, {}, {}});
    m.add(Activity{"wb", {"b"}, {}, {"joint"}, {}, {}, {}, {}});
    m.add(Evaluation{"e", {"boss"}, {"a", "b"}, "joint", {"joint"}, {"i"}});
    m.add(Incentive{"i", incentive, "e", {"a", "b"}});
    return m;
}

}  // namespace

TEST_CASE("golden risks and cooperation") {
    InferenceResult r = infer(golden());
    const std::set<Fact> risks{
        F("CoordinationRisk(pr, wim)"),        F("CoordinationRisk(rm, wim)"),
        F("CooperationRisk(pr, wim)"),         F("CooperationRisk(rm, wim)"),
        F("ShirkRisk(pr, a_review)"),          F("ShirkRisk(pr, t_review)"),
        F("SubGoalOptimizationRisk(rm, wim, s_flood_likelihood)"),
    };
    std::set<Fact> got;
    for (const auto& f : r.in(Stratum::S2)) got.insert(f);
    for (const auto& f : r.in(Stratum::S3)) got.insert(f);
    CHECK(got == risks);
    CHECK(r.of(pred::FreeRidingRisk).empty());
}

TEST_CASE("golden dependences") {
    InferenceResult r = infer(golden());
    CHECK(as_set(r.of(pred::PredictiveNeed)) ==
          std::set<Fact>{F("PredictiveNeed(rm, wim, a_channel, a_sewer)"),
                         F("PredictiveNeed(wim, rm, a_sewer, a_channel)"),
                         F("PredictiveNeed(wim, pr, a_sewer, a_review)")});
    const std::set<Fact> ep{F("EpistemicallyDependentOn(rm, wim, e_rm)"),
                            F("EpistemicallyDependentOn(wim, rm, e_wim)"),
                            F("EpistemicallyDependentOn(wim, pr, e_wim)")};
    CHECK(as_set(r.of(pred::EpistemicallyDependentOn)) == ep);
    std::set<Fact> reward;
    for (const auto& f : ep) reward.insert(Fact{std::string(pred::RewardDependentOn), f.args});
    CHECK(as_set(r.of(pred::RewardDependentOn)) == reward);
    CHECK(r.of(pred::OutcomeDependentOn).empty());
    CHECK(as_set(r.of(pred::CoordinationNeed)) ==
          std::set<Fact>{F("CoordinationNeed(pr, wim)"), F("CoordinationNeed(rm, wim)")});
}

TEST_CASE("golden matches the brute-force oracle") {
    OrgModel g = golden();
    CHECK(derived(infer(g)) == orgrisk::testing::oracle_facts(g));
}

TEST_CASE("empty model derives nothing") {
    InferenceResult r = infer(OrgModel{});
    CHECK(r.facts.empty());
}

TEST_CASE("invalid models are refused") {
    OrgModel m = golden();
    m.incentives.at("r_rm").recipients.insert("wim");
    CHECK_THROWS_AS(infer(m), InvalidModelError);
}

TEST_CASE("predictive need skips self-dependence") {
    OrgModel m;
    m.add(Agent{"x", AgentKind::Individual, ""});
    m.add(Activity{"w1", {"x"}, {}, {}, {}, {}, {}, {}});
    m.add(Activity{"w2", {"x"}, {}, {}, {}, {}, {}, {}});
    m.add(Relation::depends_on("w1", "w2"));
    CHECK(derive_predictive_needs(m).empty());
}

TEST_CASE("epistemic dependence needs an incentive") {
    OrgModel g = golden();
    g.incentives.erase("r_wim");
    g.evaluations.at("e_wim").incentives.clear();
    auto ep = as_set(derive_epistemic_dependence(g));
    CHECK(ep == std::set<Fact>{F("EpistemicallyDependentOn(rm, wim, e_rm)")});
}

TEST_CASE("outcome and reward dependence on a shared evaluation") {
    OrgModel m = pair_model(IncentiveKind::Reward);
    REQUIRE(validate_model(m).empty());
    CHECK(as_set(derive_outcome_dependence(m)) ==
          std::set<Fact>{F("OutcomeDependentOn(a, b, e)"), F("OutcomeDependentOn(b, a, e)")});
    CHECK(as_set(derive_reward_dependence(m)) ==
          std::set<Fact>{F("RewardDependentOn(a, b, e)"), F("RewardDependentOn(b, a, e)")});

    OrgModel s = pair_model(IncentiveKind::Sanction);
    CHECK(derive_outcome_dependence(s).size() == 2);
    CHECK(derive_reward_dependence(s).empty());
}

TEST_CASE("outcome dependence through a collective evaluatee") {
    OrgModel m = pair_model(IncentiveKind::Reward);
    m.add(Agent{"C", AgentKind::Collective, ""});
    m.add(Relation::member_of("a", "C"));
    m.add(Relation::member_of("b", "C"));
    m.evaluations.at("e").evaluatees = {"C"};
    m.incentives.at("i").recipients = {"C"};
    REQUIRE(validate_model(m).empty());
    CHECK(as_set(derive_outcome_dependence(m)) ==
          std::set<Fact>{F("OutcomeDependentOn(a, b, e)"), F("OutcomeDependentOn(b, a, e)")});
}

TEST_CASE("coordination needs from epistemic dependence") {
    CHECK(derive_coordination_needs({}).empty());
    CHECK(as_set(derive_coordination_needs({F("EpistemicallyDependentOn(y, x, e)")})) ==
          std::set<Fact>{F("CoordinationNeed(x, y)")});
}

TEST_CASE("coordination mechanisms suppress coordination risk") {
    OrgModel g = golden();
    g.add(CoordinationMechanism{"m", {"rm", "wim"}, ""});
    CHECK(as_set(derive_coordination_risks(g)) == std::set<Fact>{F("CoordinationRisk(pr, wim)")});
    g.mechanisms.at("m").participants = {"pr", "rm", "wim"};
    CHECK(derive_coordination_risks(g).empty());
}

TEST_CASE("free-riding") {
    OrgModel m = pair_model(IncentiveKind::Reward);
    CHECK(as_set(derive_free_riding_risks(m)) ==
          std::set<Fact>{F("FreeRidingRisk(a, e)"), F("FreeRidingRisk(b, e)")});
    CHECK(as_set(infer(m).of(pred::CooperationRisk)) == std::set<Fact>{F("CooperationRisk(a, b)")});

    m.evaluations.at("e").subjects.insert("wa");
    CHECK(as_set(derive_free_riding_risks(m)) == std::set<Fact>{F("FreeRidingRisk(b, e)")});
    CHECK(as_set(infer(m).of(pred::CooperationRisk)) == std::set<Fact>{F("CooperationRisk(a, b)")});

    CHECK(derive_free_riding_risks(golden()).empty());
}

TEST_CASE("shirking") {
    OrgModel g = golden();
    auto sh = as_set(derive_shirk_risks(g));
    CHECK(sh.contains(F("ShirkRisk(pr, a_review)")));
    CHECK_FALSE(sh.contains(F("ShirkRisk(wim, a_sewer)")));

    OrgModel m;
    m.add(Agent{"x", AgentKind::Individual, ""});
    m.add(Activity{"w", {"x"}, {}, {}, {}, {}, {}, {}});
    CHECK(as_set(derive_shirk_risks(m)) == std::set<Fact>{F("ShirkRisk(x, w)")});
}

TEST_CASE("sub-goal optimization") {
    OrgModel g = golden();
    CHECK(as_set(derive_subgoal_optimization_risks(g)) ==
          std::set<Fact>{F("SubGoalOptimizationRisk(rm, wim, s_flood_likelihood)")});

    OrgModel joint = g;
    joint.add(Evaluation{"e_flood", {"city"}, {"rm", "wim"}, "s_flood_likelihood", {}, {}});
    REQUIRE(validate_model(joint).empty());
    CHECK(derive_subgoal_optimization_risks(joint).empty());

    OrgModel unevaluated = g;
    unevaluated.evaluations.at("e_rm").subjects.clear();
    unevaluated.evaluations.at("e_rm").target = "s_plans_accommodated";
    REQUIRE_FALSE(has_errors(validate_model(unevaluated)));
    CHECK(derive_subgoal_optimization_risks(unevaluated).empty());
    CHECK(as_set(derive_shirk_risks(unevaluated)).contains(F("ShirkRisk(rm, a_channel)")));
}

TEST_CASE("cooperation risk clauses") {
    CHECK(derive_cooperation_risks({}).empty());
    InferenceResult r = infer(golden());
    for (const auto& d : r.derivations_of(F("CooperationRisk(pr, wim)")))
        CHECK(d.rule == kCooperationViaShirking);
    for (const auto& d : r.derivations_of(F("CooperationRisk(rm, wim)")))
        CHECK(d.rule == kCooperationViaSubGoal);
}

TEST_CASE("domain rules") {
    using namespace orgrisk::datalog;
    auto code_of = [](Rule rule) -> std::string {
        Engine e;
        try {
            e.register_domain_rule(std::move(rule));
        } catch (const RuleError& err) {
            return err.code();
        }
        return "";
    };
    CHECK(code_of({"s2", Stratum::S2, {"X", {var("A")}}, {pos("Individual", {var("A")})}}) == "InvalidStratum");
    CHECK(code_of({"neg", Stratum::S1, {"X", {var("A")}},
                   {pos("Individual", {var("A")}), neg("Collective", {var("A")})}}) == "InvalidStratum");
    CHECK(code_of({"hijack", Stratum::S0, {"ShirkRisk", {var("A"), var("A")}}, {pos("Individual", {var("A")})}}) ==
          "InvalidStratum");
    CHECK(code_of({"reads-s2", Stratum::S1, {"X", {var("A")}}, {pos("ShirkRisk", {var("A"), var("W")})}}) ==
          "InvalidStratum");

    SUBCASE("zero rules behave like the baseline") {
        CHECK(Engine().infer(golden()).same_content(infer(golden())));
    }

    SUBCASE("geographic overlap adds dependences") {
        OrgModel g = golden();
        g.add(Characteristic{"c_district_7", CharacteristicKind::Activity, "district 7"});
        g.activities.at("a_review").characteristics.insert("c_district_7");
        g.activities.at("a_sewer").characteristics.insert("c_district_7");
        Engine e;
        e.register_domain_rule({"geo-overlap", Stratum::S0, {"DependsOn", {var("W1"), var("W2")}},
                                {pos("HasCharacteristic", {var("W1"), var("C")}),
                                 pos("HasCharacteristic", {var("W2"), var("C")}), not_equal(var("W1"), var("W2"))}});
        InferenceResult r = e.infer(g);
        const Fact dep = F("DependsOn(a_review, a_sewer)");
        REQUIRE(r.contains(dep));
        CHECK(r.derivations_of(dep).front().rule == "geo-overlap");
        CHECK(r.contains(F("PredictiveNeed(pr, wim, a_review, a_sewer)")));
        // Asserted DependsOn(a_sewer, a_review) gains a second derivation.
        CHECK(r.derivations_of(F("DependsOn(a_sewer, a_review)")).size() == 2);
        CHECK(r.facts.size() > infer(g).facts.size());
    }
}

TEST_CASE("fixpoint soundness and provenance completeness") {
    InferenceResult r = infer(golden());
    std::vector<Fact> all;
    for (const auto& [f, _] : r.facts) all.push_back(f);
    for (const auto& p : dependence_predicates()) CHECK(derive(all, p) == r.of(p));
    for (const auto& p : risk_predicates()) CHECK(derive(all, p) == r.of(p));
    for (const auto& [f, s] : r.facts) {
        REQUIRE_FALSE(r.derivations_of(f).empty());
        for (const auto& d : r.derivations_of(f))
            for (const auto& p : d.premises) CHECK(r.contains(p));
    }
}

TEST_CASE("inference is deterministic") {
    CHECK(infer(golden()).same_content(infer(golden())));
}
