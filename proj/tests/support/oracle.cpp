#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace orgrisk::testing {

namespace {

using Pair = std::pair<Id, Id>;

struct Oracle {
    const OrgModel& m;
    std::set<Pair> member;      // (member, collective), transitive
    std::set<Pair> contrib;     // (agent, activity-or-state)
    std::set<Fact> out;

    explicit Oracle(const OrgModel& model) : m(model) {
        for (const auto& r : m.relations)
            if (r.kind == RelationKind::MemberOf) member.insert({r.first, r.second});
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& [a, b] : std::set<Pair>(member))
                for (const auto& [c, d] : std::set<Pair>(member))
                    if (b == c) changed |= member.insert({a, d}).second;
        }

        for (const auto& [w, act] : m.activities)
            for (const auto& p : act.performers) {
                contrib.insert({p, w});
                for (const auto& s : act.causes) contrib.insert({p, s});
            }
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& [sid, s] : m.states)
                for (const auto& child : s.children)
                    for (const auto& [a, x] : std::set<Pair>(contrib))
                        if (x == child) changed |= contrib.insert({a, sid}).second;
        }
    }

    std::vector<Id> agents() const {
        std::vector<Id> v;
        for (const auto& [id, _] : m.agents) v.push_back(id);
        return v;
    }

    std::vector<Id> works() const {
        std::vector<Id> v;
        for (const auto& [id, _] : m.activities) v.push_back(id);
        for (const auto& [id, _] : m.tasks) v.push_back(id);
        std::sort(v.begin(), v.end());
        return v;
    }

    bool individual(const Id& a) const {
        auto it = m.agents.find(a);
        return it != m.agents.end() && it->second.kind == AgentKind::Individual;
    }

    bool expands_to(const IdSet& direct, const Id& a) const {
        if (direct.contains(a)) return true;
        for (const auto& c : direct)
            if (member.contains({a, c})) return true;
        return false;
    }

    bool evaluatee(const Id& e, const Id& a) const { return expands_to(m.evaluations.at(e).evaluatees, a); }
    bool leaf_evaluatee(const Id& e, const Id& a) const { return evaluatee(e, a) && individual(a); }
    bool co_evaluatee(const Id& e, const Id& a, const Id& b) const {
        return a != b && leaf_evaluatee(e, a) && leaf_evaluatee(e, b);
    }

    bool holds(const Id& a, const Id& w) const {
        if (auto it = m.activities.find(w); it != m.activities.end()) return it->second.performers.contains(a);
        if (auto it = m.tasks.find(w); it != m.tasks.end()) return it->second.agent == a;
        return false;
    }

    bool incentive_of(const Id& i, const Id& e) const {
        auto ev = m.evaluations.find(e);
        if (ev != m.evaluations.end() && ev->second.incentives.contains(i)) return true;
        auto in = m.incentives.find(i);
        return in != m.incentives.end() && in->second.evaluation == e;
    }

    std::vector<Id> incentives_for(const Id& e) const {
        std::set<Id> ids;
        for (const auto& [i, _] : m.incentives)
            if (incentive_of(i, e)) ids.insert(i);
        for (const auto& i : m.evaluations.at(e).incentives) ids.insert(i);
        return {ids.begin(), ids.end()};
    }

    bool recipient(const Id& i, const Id& a) const {
        auto it = m.incentives.find(i);
        return it != m.incentives.end() && expands_to(it->second.recipients, a);
    }

    bool is_reward(const Id& i) const {
        auto it = m.incentives.find(i);
        return it != m.incentives.end() && it->second.kind == IncentiveKind::Reward;
    }

    // x lies at or below z in the state composition.
    bool state_part(const Id& x, const Id& z) const {
        if (!m.states.contains(x) || !m.states.contains(z)) return false;
        if (x == z) return true;
        for (const auto& c : m.states.at(z).children)
            if (state_part(x, c)) return true;
        return false;
    }

    bool part_of_goal(const Id& s) const {
        for (const auto& [_, g] : m.goals)
            if (state_part(s, g.desired_state)) return true;
        return false;
    }

    bool subject_covers(const Id& e, const Id& w) const {
        const auto& subjects = m.evaluations.at(e).subjects;
        if (m.activities.contains(w) && subjects.contains(w)) return true;
        if (auto it = m.activities.find(w); it != m.activities.end())
            for (const auto& s : it->second.causes)
                if (subjects.contains(s)) return true;
        return false;
    }

    bool appraises(const Id& e, const Id& x) const {
        const auto& ev = m.evaluations.at(e);
        return ev.target == x || ev.subjects.contains(x);
    }

    bool evaluated(const Id& a, const Id& w) const {
        for (const auto& [e, _] : m.evaluations) {
            if (!evaluatee(e, a)) continue;
            if (subject_covers(e, w)) return true;
            auto t = m.tasks.find(w);
            if (t == m.tasks.end()) continue;
            auto g = m.goals.find(t->second.goal);
            if (g == m.goals.end()) continue;
            for (const auto& [x, _] : m.states)
                if (state_part(x, g->second.desired_state) && appraises(e, x)) return true;
        }
        return false;
    }

    bool state_appraised(const Id& s) const {
        for (const auto& [e, _] : m.evaluations)
            for (const auto& [x, _] : m.states)
                if (appraises(e, x) && state_part(s, x)) return true;
        return false;
    }

    IdSet contributors(const Id& x) const {
        IdSet out;
        for (const auto& [a, y] : contrib)
            if (y == x) out.insert(a);
        return out;
    }

    bool has_sole_subject(const Id& a, const Id& e) const {
        for (const auto& x : m.evaluations.at(e).subjects)
            if (contributors(x) == IdSet{a}) return true;
        return false;
    }

    bool mechanism_covers(const Id& a, const Id& b) const {
        for (const auto& [_, mech] : m.mechanisms)
            if (mech.participants.contains(a) && mech.participants.contains(b)) return true;
        return false;
    }

    bool depends_on(const Id& w1, const Id& w2) const {
        return m.relations.contains(Relation::depends_on(w1, w2));
    }

    static Fact fact(std::string_view p, std::vector<std::string> args) { return {std::string(p), std::move(args)}; }

    static std::vector<std::string> pair(const Id& a, const Id& b) {
        return a < b ? std::vector<std::string>{a, b} : std::vector<std::string>{b, a};
    }

    bool predictive_need(const Id& a1, const Id& a2, const Id& w1, const Id& w2) const {
        return a1 != a2 && depends_on(w1, w2) && holds(a1, w1) && holds(a2, w2);
    }

    bool epistemic(const Id& a1, const Id& a2, const Id& e) const {
        bool rewarded = false;
        for (const auto& i : incentives_for(e)) rewarded |= recipient(i, a1);
        if (!rewarded) return false;
        for (const auto& w1 : works())
            for (const auto& w2 : works())
                if (predictive_need(a1, a2, w1, w2) && subject_covers(e, w1)) return true;
        return false;
    }

    bool free_riding(const Id& a, const Id& e) const {
        bool co = false;
        for (const auto& b : agents()) co |= co_evaluatee(e, a, b);
        return co && !has_sole_subject(a, e);
    }

    bool shirk(const Id& a, const Id& w) const { return holds(a, w) && !evaluated(a, w); }

    void run() {
        const auto as = agents();
        const auto ws = works();
        std::vector<Id> es;
        for (const auto& [e, _] : m.evaluations) es.push_back(e);

        for (const auto& a1 : as)
            for (const auto& a2 : as) {
                for (const auto& w1 : ws)
                    for (const auto& w2 : ws)
                        if (predictive_need(a1, a2, w1, w2))
                            out.insert(fact("PredictiveNeed", {a1, a2, w1, w2}));
                for (const auto& e : es) {
                    const bool outcome = co_evaluatee(e, a1, a2);
                    if (outcome) out.insert(fact("OutcomeDependentOn", {a1, a2, e}));
                    const bool epi = epistemic(a1, a2, e);
                    if (epi) {
                        out.insert(fact("EpistemicallyDependentOn", {a1, a2, e}));
                        out.insert(fact("CoordinationNeed", pair(a1, a2)));
                        if (!mechanism_covers(a1, a2)) out.insert(fact("CoordinationRisk", pair(a1, a2)));
                    }
                    bool shared_reward = false;
                    for (const auto& i : incentives_for(e))
                        shared_reward |= is_reward(i) && recipient(i, a1) && recipient(i, a2);
                    if (epi || (outcome && shared_reward)) out.insert(fact("RewardDependentOn", {a1, a2, e}));
                }
            }

        for (const auto& a : as) {
            for (const auto& w : ws)
                if (shirk(a, w)) out.insert(fact("ShirkRisk", {a, w}));
            for (const auto& e : es)
                if (free_riding(a, e)) {
                    out.insert(fact("FreeRidingRisk", {a, e}));
                    for (const auto& b : as)
                        if (co_evaluatee(e, a, b)) out.insert(fact("CooperationRisk", pair(a, b)));
                }
        }

        for (const auto& r : m.relations) {
            if (r.kind != RelationKind::StrategicComplements || !r.state) continue;
            const Id& s = *r.state;
            if (!part_of_goal(s) || state_appraised(s)) continue;
            for (const auto& a1 : as)
                for (const auto& a2 : as)
                    if (a1 != a2 && holds(a1, r.first) && holds(a2, r.second) && evaluated(a1, r.first) &&
                        evaluated(a2, r.second)) {
                        auto p = pair(a1, a2);
                        out.insert(fact("SubGoalOptimizationRisk", {p[0], p[1], s}));
                        out.insert(fact("CooperationRisk", p));
                    }
        }

        // Shirking clause: a1 needs a2's work w2, is evaluated (and rewarded)
        // on w1, and a2 is not answerable for w2.
        for (const auto& a1 : as)
            for (const auto& a2 : as)
                for (const auto& e : es) {
                    if (!epistemic(a1, a2, e)) continue;
                    for (const auto& w1 : ws)
                        for (const auto& w2 : ws)
                            if (predictive_need(a1, a2, w1, w2) && subject_covers(e, w1) && shirk(a2, w2))
                                out.insert(fact("CooperationRisk", pair(a1, a2)));
                }
    }
};

}  // namespace

std::set<Fact> oracle_facts(const OrgModel& model) {
    Oracle o(model);
    o.run();
    return o.out;
}

}  // namespace orgrisk::testing
