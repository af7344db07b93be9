// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "generator.hpp"
#include "oracle.hpp"
#include "orgrisk/engine.hpp"
#include "orgrisk/explain.hpp"
#include "orgrisk/scenario_io.hpp"
#include "orgrisk/whatif.hpp"

using namespace orgrisk;
using Clock = std::chrono::steady_clock;

namespace {

std::string read_text(const std::string& rel) {
    std::ifstream in(std::string(ORGRISK_DATA_DIR) + "/" + rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Fact F(const std::string& text) { return *parse_fact(text); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::set<Fact> upper_strata(const InferenceResult& r) {
    std::set<Fact> out;
    for (const auto& [f, s] : r.facts)
        if (s != Stratum::S0) out.insert(f);
    return out;
}

std::set<Fact> risks(const InferenceResult& r) {
    std::set<Fact> out;
    for (const auto& [f, s] : r.facts)
        if (s == Stratum::S2 || s == Stratum::S3) out.insert(f);
    return out;
}

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    if (!ok) ++failures;
}

template <class Fn>
void criterion(const std::string& name, Fn fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(name, false, std::string("exception: ") + e.what());
    }
}

constexpr int kOracleModels = 500;

}  // namespace

int main() {
    const std::string golden_text = read_text("golden_flood.orgm");

    criterion("golden-reproduction", [&] {
        auto t0 = Clock::now();
        InferenceResult r = infer(parse_scenario(golden_text));
        double secs = seconds_since(t0);
        const std::set<Fact> expected{
            F("SubGoalOptimizationRisk(rm, wim, s_flood_likelihood)"),
            F("ShirkRisk(pr, a_review)"),
            F("ShirkRisk(pr, t_review)"),
            F("CooperationRisk(rm, wim)"),
            F("CooperationRisk(pr, wim)"),
            F("CoordinationRisk(rm, wim)"),
            F("CoordinationRisk(pr, wim)"),
        };
        auto got = risks(r);
        std::ostringstream d;
        d << got.size() << " S2/S3 facts, expected " << expected.size() << ", " << secs << " s";
        report("golden-reproduction", got == expected && secs < 1.0, d.str());
    });

    criterion("oracle-equivalence", [&] {
        auto t0 = Clock::now();
        int discrepancies = 0;
        for (std::uint64_t seed = 0; seed < kOracleModels; ++seed) {
            OrgModel m = testing::random_model(seed);
            if (!testing::within(m) || upper_strata(infer(m)) != testing::oracle_facts(m)) ++discrepancies;
        }
        double secs = seconds_since(t0);
        std::ostringstream d;
        d << kOracleModels << " models, " << discrepancies << " discrepancies, " << secs << " s";
        report("oracle-equivalence", discrepancies == 0 && secs < 60.0, d.str());
    });

    criterion("implication-chain", [&] {
        int checked = 0, violations = 0;
        for (std::uint64_t seed = 0; seed < kOracleModels; ++seed) {
            InferenceResult r = infer(testing::random_model(seed));
            for (const auto& f : r.of(pred::EpistemicallyDependentOn)) {
                ++checked;
                const auto& a = f.args[0];
                const auto& b = f.args[1];
                Fact reward{std::string(pred::RewardDependentOn), f.args};
                Fact need{std::string(pred::CoordinationNeed), a < b ? std::vector{a, b} : std::vector{b, a}};
                if (!r.contains(reward) || !r.contains(need)) ++violations;
            }
        }
        std::ostringstream d;
        d << checked << " epistemic dependences, " << violations << " violations";
        report("implication-chain", violations == 0 && checked > 0, d.str());
    });

    criterion("stratum-monotonicity", [&] {
        const Engine engine;
        std::mt19937_64 rng(20261016);
        int pairs = 0, s1_lost = 0, eval_or_mech = 0, misplaced = 0;
        for (std::uint64_t seed = 0; pairs < 100 && seed < 1000; ++seed) {
            OrgModel m = testing::random_model(seed);
            auto iv = testing::random_addition(m, rng);
            if (!iv) continue;
            ++pairs;
            InferenceDiff d = diff_inferences(infer(m), infer(apply_intervention(m, *iv)));
            bool confined_kind = false;
            for (const auto& op : iv->ops)
                if (op.op == OpKind::AddEntity &&
                    (op.kind == EntityKind::Evaluation || op.kind == EntityKind::Mechanism))
                    confined_kind = true;
            if (confined_kind) ++eval_or_mech;
            for (const auto& f : d.removed) {
                Stratum s = engine.program().label(f.predicate);
                if (s == Stratum::S1) ++s1_lost;
                if (confined_kind && s < Stratum::S2) ++misplaced;
            }
        }
        std::ostringstream d;
        d << pairs << " pairs (" << eval_or_mech << " evaluation/mechanism), " << s1_lost << " S1 facts lost, "
          << misplaced << " removals outside S2/S3";
        report("stratum-monotonicity", pairs == 100 && s1_lost == 0 && misplaced == 0 && eval_or_mech > 0, d.str());
    });

    criterion("whatif-goldens", [&] {
        OrgModel g = parse_scenario(golden_text);
        InferenceResult base = infer(g);
        auto diff_of = [&](const std::string& file) {
            return diff_inferences(base, infer(apply_intervention(g, parse_intervention(read_text(file)))));
        };
        InferenceDiff pr = diff_of("interventions/evaluate_pr.json");
        std::set<Fact> removed(pr.removed.begin(), pr.removed.end());
        bool pr_ok = removed.contains(F("ShirkRisk(pr, a_review)")) && removed.contains(F("CooperationRisk(pr, wim)"));
        const Engine engine;
        for (const auto& f : pr.added) {
            bool risk = engine.program().label(f.predicate) >= Stratum::S2;
            bool between = std::count(f.args.begin(), f.args.end(), "pr") && std::count(f.args.begin(), f.args.end(), "wim");
            if (risk && between) pr_ok = false;
        }
        InferenceDiff mech = diff_of("interventions/mechanism_rm_wim.json");
        bool mech_ok = mech.removed == std::vector<Fact>{F("CoordinationRisk(rm, wim)")} && mech.added.empty();
        std::ostringstream d;
        d << "evaluate-PR removes " << pr.removed.size() << " facts; mechanism removes " << mech.removed.size()
          << " and adds " << mech.added.size();
        report("whatif-goldens", pr_ok && mech_ok, d.str());
    });

    criterion("round-trip", [&] {
        int failed = 0, total = 0;
        auto check = [&](const OrgModel& m) {
            ++total;
            const std::string a = serialize_scenario(m);
            OrgModel back = parse_scenario(a);
            if (!(back == m) || serialize_scenario(back) != a || serialize_scenario(m) != a) ++failed;
        };
        OrgModel g = parse_scenario(golden_text);
        check(g);
        if (serialize_scenario(g) != golden_text) ++failed;
        for (std::uint64_t seed = 0; seed < 100; ++seed) check(testing::random_model(seed));
        std::ostringstream d;
        d << total << " models, " << failed << " failures";
        report("round-trip", failed == 0, d.str());
    });

    criterion("determinism", [&] {
        const std::string a = render_report(infer(parse_scenario(golden_text)), ReportFormat::Structured);
        const std::string b = render_report(infer(parse_scenario(golden_text)), ReportFormat::Structured);
        std::ostringstream d;
        d << a.size() << " bytes, " << (a == b ? "identical" : "different");
        report("determinism", a == b && !a.empty(), d.str());
    });

    return failures == 0 ? 0 : 1;
}
