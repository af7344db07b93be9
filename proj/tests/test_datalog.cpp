#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "orgrisk/datalog.hpp"

using namespace orgrisk;
using namespace orgrisk::datalog;
using orgrisk::testing::F;

namespace {

Program reachability() {
    Program p;
    p.declare_input("Edge", 2);
    p.add_rule({"reach/base", Stratum::S0, {"Reach", {var("X"), var("Y")}}, {pos("Edge", {var("X"), var("Y")})}});
    p.add_rule({"reach/step", Stratum::S0, {"Reach", {var("X"), var("Z")}},
                {pos("Reach", {var("X"), var("Y")}), pos("Edge", {var("Y"), var("Z")})}});
    return p;
}

std::set<Fact> facts_of(const Fixpoint& fp, const std::string& predicate) {
    std::set<Fact> out;
    for (const auto& [f, _] : fp.facts)
        if (f.predicate == predicate) out.insert(f);
    return out;
}

}  // namespace

TEST_CASE("recursive rules reach a fixpoint") {
    auto fp = evaluate(reachability(), {F("Edge(a, b)"), F("Edge(b, c)"), F("Edge(c, a)")});
    CHECK(facts_of(fp, "Reach").size() == 9);
    CHECK(fp.facts.at(F("Edge(a, b)")) == Stratum::S0);
    CHECK(fp.derivations.at(F("Edge(a, b)")).front().rule == kAssertedRule);
}

TEST_CASE("negation reads a completed lower component") {
    Program p = reachability();
    p.declare_input("Node", 1);
    p.add_rule({"unreached", Stratum::S2, {"Unreached", {var("X"), var("Y")}},
                {pos("Node", {var("X")}), pos("Node", {var("Y")}), neg("Reach", {var("X"), var("Y")}),
                 not_equal(var("X"), var("Y"))}});
    auto fp = evaluate(p, {F("Node(a)"), F("Node(b)"), F("Node(c)"), F("Edge(a, b)")});
    CHECK(facts_of(fp, "Unreached") ==
          std::set<Fact>{F("Unreached(b, a)"), F("Unreached(c, a)"), F("Unreached(a, c)"),
                         F("Unreached(b, c)"), F("Unreached(c, b)")});
    CHECK(p.label("Unreached") == Stratum::S2);
    CHECK(p.label("Edge") == Stratum::S0);
    const auto& d = fp.derivations.at(F("Unreached(a, c)")).front();
    CHECK(d.absent == std::vector<Fact>{F("Reach(a, c)")});
    CHECK(d.premises == std::vector<Fact>{F("Node(a)"), F("Node(c)")});
}

TEST_CASE("negation inside recursion is rejected") {
    Program p;
    p.declare_input("N", 1);
    p.add_rule({"p", Stratum::S2, {"P", {var("X")}}, {pos("N", {var("X")}), neg("Q", {var("X")})}});
    p.add_rule({"q", Stratum::S2, {"Q", {var("X")}}, {pos("N", {var("X")}), neg("P", {var("X")})}});
    try {
        evaluate(p, {F("N(a)")});
        FAIL("expected Unstratifiable");
    } catch (const RuleError& e) {
        CHECK(e.code() == "Unstratifiable");
    }
}

TEST_CASE("unsafe and ill-shaped rules are rejected") {
    Program p;
    p.declare_input("N", 1);
    auto code_of = [&](Rule r) -> std::string {
        try {
            p.add_rule(std::move(r));
        } catch (const RuleError& e) {
            return e.code();
        }
        return "";
    };
    CHECK(code_of({"unsafe-head", Stratum::S0, {"P", {var("Y")}}, {pos("N", {var("X")})}}) == "InvalidRule");
    CHECK(code_of({"unsafe-neg", Stratum::S2, {"P", {var("X")}}, {pos("N", {var("X")}), neg("N", {var("Z")})}}) ==
          "InvalidRule");
    CHECK(code_of({"arity", Stratum::S0, {"P", {var("X")}}, {pos("N", {var("X"), var("X")})}}) == "InvalidRule");
}

TEST_CASE("canonical pairs and less") {
    Program p;
    p.declare_input("Link", 2);
    p.add_rule({"pair", Stratum::S1, {"Pair", {var("X"), var("Y")}}, {pos("Link", {var("X"), var("Y")})}, true});
    p.add_rule({"ordered", Stratum::S1, {"Ordered", {var("X"), var("Y")}},
                {pos("Link", {var("X"), var("Y")}), less(var("X"), var("Y"))}});
    auto fp = evaluate(p, {F("Link(b, a)"), F("Link(a, b)")});
    CHECK(facts_of(fp, "Pair") == std::set<Fact>{F("Pair(a, b)")});
    CHECK(fp.derivations.at(F("Pair(a, b)")).size() == 2);
    CHECK(facts_of(fp, "Ordered") == std::set<Fact>{F("Ordered(a, b)")});
}

TEST_CASE("constants in rule bodies") {
    Program p;
    p.declare_input("Kind", 2);
    p.add_rule({"agents", Stratum::S0, {"Agent", {var("X")}}, {pos("Kind", {var("X"), constant("agent")})}});
    auto fp = evaluate(p, {F("Kind(a, agent)"), F("Kind(b, task)")});
    CHECK(facts_of(fp, "Agent") == std::set<Fact>{F("Agent(a)")});
}

TEST_CASE("provenance never cycles through derived facts") {
    auto fp = evaluate(reachability(),
                       {F("Edge(a, b)"), F("Edge(b, a)"), F("Edge(b, c)"), F("Edge(c, c)"), F("Edge(c, d)")});
    // Order facts by the first time they can be justified from inputs.
    std::map<Fact, int> rank;
    for (const auto& [f, ds] : fp.derivations)
        for (const auto& d : ds)
            if (d.rule == kAssertedRule) rank[f] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [f, ds] : fp.derivations) {
            if (rank.contains(f)) continue;
            for (const auto& d : ds) {
                int r = 0;
                bool ok = true;
                for (const auto& p : d.premises) {
                    auto it = rank.find(p);
                    if (it == rank.end()) {
                        ok = false;
                        break;
                    }
                    r = std::max(r, it->second + 1);
                }
                if (ok) {
                    rank[f] = r;
                    changed = true;
                    break;
                }
            }
        }
    }
    CHECK(rank.size() == fp.facts.size());
    // Every recorded derivation's premises are already known facts.
    for (const auto& [f, ds] : fp.derivations)
        for (const auto& d : ds)
            for (const auto& p : d.premises) CHECK(fp.facts.contains(p));
}

TEST_CASE("evaluation is deterministic regardless of input order") {
    std::vector<Fact> in{F("Edge(a, b)"), F("Edge(b, c)"), F("Edge(c, d)"), F("Edge(d, b)")};
    auto a = evaluate(reachability(), in);
    std::reverse(in.begin(), in.end());
    auto b = evaluate(reachability(), in);
    CHECK(a.facts == b.facts);
    CHECK(a.derivations == b.derivations);
}
