#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "orgrisk/explain.hpp"

using namespace orgrisk;
using orgrisk::testing::F;
using orgrisk::testing::golden;

namespace {

const ProofTree* child(const ProofTree& t, const Fact& f) {
    for (const auto& c : t.children)
        if (c.root == f) return &c;
    return nullptr;
}

void check_leaves(const InferenceResult& r, const ProofTree& t) {
    if (t.children.empty()) {
        CHECK(t.rule == kAssertedRule);
        CHECK(r.is_asserted(t.root));
    }
    for (const auto& c : t.children) check_leaves(r, c);
}

}  // namespace

TEST_CASE("cooperation risk between pr and wim is explained through shirking") {
    InferenceResult r = infer(golden());
    ProofTree t = explain(r, F("CooperationRisk(pr, wim)"));
    CHECK(t.rule == kCooperationViaShirking);

    const ProofTree* ep = child(t, F("EpistemicallyDependentOn(wim, pr, e_wim)"));
    REQUIRE(ep);
    const ProofTree* pn = child(*ep, F("PredictiveNeed(wim, pr, a_sewer, a_review)"));
    REQUIRE(pn);
    CHECK(child(*pn, F("DependsOn(a_sewer, a_review)")));
    CHECK(child(*ep, F("IncentiveOf(r_wim, e_wim)")));

    const ProofTree* shirk = child(t, F("ShirkRisk(pr, a_review)"));
    REQUIRE(shirk);
    CHECK(shirk->absent == std::vector<Fact>{F("Evaluated(pr, a_review)")});

    check_leaves(r, t);
    const std::string text = render_proof(t);
    CHECK(text.rfind("CooperationRisk(pr, wim)  [cooperation/shirking]\n", 0) == 0);
    CHECK(text.find("not Evaluated(pr, a_review)") != std::string::npos);
}

TEST_CASE("asserted facts explain as a single node") {
    InferenceResult r = infer(golden());
    ProofTree t = explain(r, F("Performs(pr, a_review)"));
    CHECK(t.rule == kAssertedRule);
    CHECK(t.children.empty());
    CHECK(t.depth() == 0);
}

TEST_CASE("unknown facts") {
    InferenceResult r = infer(golden());
    CHECK_THROWS_AS(explain(r, F("ShirkRisk(wim, a_sewer)")), FactNotFoundError);
    CHECK_THROWS_AS(fact_by_id(r, "0000000000000000"), FactNotFoundError);
    const Fact f = F("ShirkRisk(pr, a_review)");
    CHECK(fact_by_id(r, fact_id(f)) == f);
}

TEST_CASE("the shallowest derivation is chosen") {
    using namespace orgrisk::datalog;
    Engine e;
    // A second, deeper way to reach every coordination need.
    e.register_domain_rule({"reward-coordination", Stratum::S1, {"CoordinationNeed", {var("X"), var("Y")}},
                            {pos("RewardDependentOn", {var("Y"), var("X"), var("E")})}, true});
    InferenceResult r = e.infer(golden());
    const Fact need = F("CoordinationNeed(pr, wim)");
    const auto& ds = r.derivations_of(need);
    REQUIRE(std::any_of(ds.begin(), ds.end(), [](const Derivation& d) { return d.rule == "reward-coordination"; }));
    REQUIRE(ds.size() >= 2);

    ProofTree t = explain(r, need);
    CHECK(t.rule != "reward-coordination");
    // The alternative through RewardDependentOn is one level deeper.
    ProofTree alt{need, "reward-coordination", {}, {explain(r, F("RewardDependentOn(wim, pr, e_wim)"))}};
    CHECK(alt.depth() == t.depth() + 1);
}

TEST_CASE("proof trees round-trip through json") {
    InferenceResult r = infer(golden());
    for (const auto& f : r.in(Stratum::S3)) {
        ProofTree t = explain(r, f);
        CHECK(proof_from_json(proof_to_json(t)) == t);
    }
}

TEST_CASE("golden report counts") {
    InferenceResult r = infer(golden());
    RiskReport rep = build_report(r);
    CHECK(rep.count(pred::CoordinationNeed) == 2);
    CHECK(rep.count(pred::CoordinationRisk) == 2);
    CHECK(rep.count(pred::CooperationRisk) == 2);
    CHECK(rep.count(pred::FreeRidingRisk) == 0);
    CHECK(rep.count(pred::ShirkRisk) == 2);
    CHECK(rep.count(pred::SubGoalOptimizationRisk) == 1);
    for (const auto& p : risk_predicates()) CHECK(rep.count(p) == r.of(p).size());

    const auto* coop = rep.section(pred::CooperationRisk);
    REQUIRE(coop);
    CHECK(coop->entries[0].fact == F("CooperationRisk(pr, wim)"));
    CHECK(coop->entries[0].clauses == std::vector<std::string>{"shirking"});
    CHECK(coop->entries[1].clauses == std::vector<std::string>{"sub-goal optimization"});
    CHECK(rep.model_id == content_hash(serialize_scenario(golden())));
}

TEST_CASE("text report") {
    const std::string text = render_report(infer(golden()), ReportFormat::Text);
    CHECK(text.find("Coordination risks (2)") != std::string::npos);
    CHECK(text.find("pr cannot be held to account for a_review because no evaluation covers it") !=
          std::string::npos);
    CHECK(text.find("(sub-goal optimization)") != std::string::npos);
    CHECK(text.find("Free-riding risks (0)") != std::string::npos);
}

TEST_CASE("empty model report") {
    RiskReport rep = build_report(infer(OrgModel{}));
    CHECK(rep.sections.size() >= 6);
    for (const auto& s : rep.sections) CHECK(s.entries.empty());
}

TEST_CASE("strategic substitutes are listed for information") {
    OrgModel g = golden();
    g.add(Relation::substitutes("a_channel", "a_sewer", "s_urban_100"));
    RiskReport rep = build_report(infer(g));
    CHECK(rep.count(pred::StrategicSubstitutes) == 1);
    CHECK(rep.sections.back().predicate == pred::StrategicSubstitutes);
}

TEST_CASE("structured report round-trips and is deterministic") {
    InferenceResult r = infer(golden());
    const std::string a = render_report(r, ReportFormat::Structured);
    CHECK(a == render_report(infer(golden()), ReportFormat::Structured));
    RiskReport back = parse_structured_report(a);
    CHECK(back == build_report(r));
    CHECK(render_report(back, ReportFormat::Structured) == a);
    CHECK_THROWS_AS(parse_structured_report("{"), Error);
    CHECK_THROWS_AS(parse_structured_report(R"({"modelId": "x"})"), Error);
}

TEST_CASE("describe templates") {
    CHECK(describe(F("CoordinationRisk(rm, wim)")) ==
          "rm and wim need to coordinate but no coordination mechanism covers them");
    CHECK(describe(F("Performs(rm, a_channel)")) == "Performs(rm, a_channel)");
}
