#include "generator.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "orgrisk/scenario_io.hpp"
#include "orgrisk/validate.hpp"

namespace orgrisk::testing {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

template <typename T>
IdSet pick_some(Rng& rng, const std::vector<T>& v, int lo, int hi) {
    IdSet out;
    const int n = uniform(rng, lo, hi);
    for (int i = 0; i < n && !v.empty(); ++i) out.insert(pick(rng, v));
    return out;
}

std::vector<Id> keys(const auto& map) {
    std::vector<Id> out;
    for (const auto& [k, _] : map) out.push_back(k);
    return out;
}

std::string name(const char* prefix, int i) { return prefix + std::to_string(i); }

OrgModel draw(Rng& rng, const Bounds& b) {
    OrgModel m;
    m.add(Characteristic{"c_level", CharacteristicKind::State, ""});
    m.add(Characteristic{"c_speed", CharacteristicKind::Activity, ""});

    const int n_agents = uniform(rng, 1, b.agents);
    std::vector<Id> agents, individuals, collectives;
    for (int i = 0; i < n_agents; ++i) {
        const bool collective = i > 0 && chance(rng, 0.2);
        Id id = name("ag", i);
        m.add(Agent{id, collective ? AgentKind::Collective : AgentKind::Individual, ""});
        agents.push_back(id);
        (collective ? collectives : individuals).push_back(id);
    }

    const int n_states = uniform(rng, 1, b.states);
    std::vector<Id> states;
    for (int i = 0; i < n_states; ++i) {
        State s;
        s.id = name("s", i);
        if (i >= 2 && chance(rng, 0.25)) {
            s.form = chance(rng, 0.5) ? Form::Conjunction : Form::Disjunction;
            while (s.children.size() < 2) s.children.insert(pick(rng, states));
        } else {
            s.characteristic = "c_level";
            s.op = Operator::GE;
            s.value = Quantity{static_cast<double>(uniform(rng, 1, 500)), "year"};
        }
        states.push_back(s.id);
        m.add_state(std::move(s));
    }
    m.add_spec(PerformanceSpec{"p_fast", Form::Atomic, "c_speed", Operator::LE, Value{Quantity{3, "day"}}, {}});

    std::vector<Id> goals;
    for (const auto& s : states)
        if (chance(rng, 0.5)) {
            goals.push_back("g_" + s);
            m.add(Goal{goals.back(), s});
        }

    std::vector<Id> tasks;
    if (!goals.empty())
        for (int i = 0, n = uniform(rng, 0, 3); i < n; ++i) {
            tasks.push_back(name("t", i));
            m.add(Task{tasks.back(), pick(rng, agents), pick(rng, goals)});
        }

    std::vector<Id> activities;
    for (int i = 0, n = uniform(rng, 0, b.activities); i < n; ++i) {
        Activity a;
        a.id = name("w", i);
        a.performers = pick_some(rng, agents, 1, 2);
        if (!tasks.empty() && chance(rng, 0.4)) a.part_of_task = pick(rng, tasks);
        a.causes = pick_some(rng, states, 0, 2);
        if (chance(rng, 0.2)) a.characteristics.insert("c_speed");
        activities.push_back(a.id);
        m.add(std::move(a));
    }

    for (int i = 0, n = uniform(rng, 0, b.evaluations); i < n; ++i) {
        Evaluation e;
        e.id = name("e", i);
        e.evaluators = pick_some(rng, agents, 1, 1);
        e.evaluatees = pick_some(rng, agents, 1, 3);
        e.target = chance(rng, 0.15) ? "p_fast" : pick(rng, states);
        std::vector<Id> own;
        for (const auto& w : activities)
            for (const auto& p : m.activities.at(w).performers)
                if (e.evaluatees.contains(p)) own.push_back(w);
        if (!own.empty() && chance(rng, 0.7)) {
            e.subjects = pick_some(rng, own, 1, 2);
        } else {
            std::vector<Id> subjects = activities;
            subjects.insert(subjects.end(), states.begin(), states.end());
            if (!subjects.empty()) e.subjects = pick_some(rng, subjects, 0, 2);
        }
        if (chance(rng, 0.7)) {
            Incentive inc;
            inc.id = "i_" + e.id;
            inc.kind = chance(rng, 0.75) ? IncentiveKind::Reward : IncentiveKind::Sanction;
            inc.evaluation = e.id;
            std::vector<Id> ees(e.evaluatees.begin(), e.evaluatees.end());
            inc.recipients = pick_some(rng, ees, 1, static_cast<int>(ees.size()));
            if (chance(rng, 0.5)) e.incentives.insert(inc.id);
            m.add(std::move(inc));
        }
        m.add(std::move(e));
    }

    for (int i = 0, n = uniform(rng, 0, 2); i < n && agents.size() >= 2; ++i) {
        CoordinationMechanism mech{name("m", i), pick_some(rng, agents, 2, 3), ""};
        m.add(std::move(mech));
    }

    const int n_rel = uniform(rng, 0, b.relations);
    for (int i = 0; i < n_rel; ++i) {
        const int kind = uniform(rng, 0, 9);
        if (kind == 0 && !collectives.empty()) {
            const Id c = pick(rng, collectives);
            const Id a = pick(rng, agents);
            // Members point to later collectives only, which rules out cycles.
            if (a < c) m.add(Relation::member_of(a, c));
        } else if (kind <= 5 && activities.size() >= 2) {
            const Id a = pick(rng, activities), b2 = pick(rng, activities);
            if (a != b2) m.add(Relation::depends_on(a, b2));
        } else if (kind == 6 && tasks.size() >= 2) {
            const Id a = pick(rng, tasks), b2 = pick(rng, tasks);
            if (a != b2) m.add(Relation::depends_on(a, b2));
        } else if (activities.size() >= 2) {
            const Id a = pick(rng, activities), b2 = pick(rng, activities);
            const Id s = goals.empty() || chance(rng, 0.3) ? pick(rng, states) : m.goals.at(pick(rng, goals)).desired_state;
            if (a == b2) continue;
            m.add(kind == 9 ? Relation::substitutes(a, b2, s) : Relation::complements(a, b2, s));
        }
    }
    return m;
}

// Drops the parts that random choices commonly get wrong.
bool repair(OrgModel& m) {
    for (int round = 0; round < 8; ++round) {
        auto vs = validate_model(m);
        if (!has_errors(vs)) return true;
        for (const auto& v : vs) {
            if (v.severity != Severity::Error) continue;
            if (v.code == "SUBJECT_NOT_EVALUATEE_WORK" && v.entity_ids.size() == 2) {
                for (const auto& id : v.entity_ids)
                    if (m.evaluations.contains(id))
                        for (const auto& s : v.entity_ids) m.evaluations[id].subjects.erase(s);
            } else if (v.code == "INCENTIVE_RECIPIENT_NOT_EVALUATEE" && v.entity_ids.size() == 2) {
                for (const auto& id : v.entity_ids)
                    if (m.incentives.contains(id))
                        for (const auto& r : v.entity_ids) m.incentives[id].recipients.erase(r);
            } else if (v.code == "EMPTY_RECIPIENTS") {
                const Id& inc = v.entity_ids.front();
                for (auto& [_, e] : m.evaluations) e.incentives.erase(inc);
                m.incentives.erase(inc);
            } else {
                return false;
            }
        }
    }
    return !has_errors(validate_model(m));
}

}  // namespace

bool within(const OrgModel& m, const Bounds& b) {
    return static_cast<int>(m.agents.size()) <= b.agents &&
           static_cast<int>(m.activities.size()) <= b.activities &&
           static_cast<int>(m.evaluations.size()) <= b.evaluations &&
           static_cast<int>(m.states.size()) <= b.states &&
           static_cast<int>(m.relations.size()) <= b.relations;
}

OrgModel random_model(std::uint64_t seed, const Bounds& bounds) {
    for (std::uint64_t s = seed;; ++s) {
        Rng rng(s * 0x9E3779B97F4A7C15ull + 1);
        OrgModel m = draw(rng, bounds);
        if (repair(m)) return m;
    }
}

std::optional<Intervention> random_addition(const OrgModel& m, std::mt19937_64& rng) {
    const auto agents = keys(m.agents);
    const auto activities = keys(m.activities);
    const auto states = keys(m.states);
    for (int attempt = 0; attempt < 20; ++attempt) {
        Intervention iv;
        switch (uniform(rng, 0, 4)) {
            case 0: {
                if (agents.empty() || states.empty()) continue;
                Id id = "e_new" + std::to_string(attempt);
                const Id ee = pick(rng, agents);
                std::vector<Id> own;
                for (const auto& w : activities)
                    if (m.activities.at(w).performers.contains(ee)) own.push_back(w);
                nlohmann::json e{{"id", id},
                                 {"evaluators", nlohmann::json::array({pick(rng, agents)})},
                                 {"evaluatees", nlohmann::json::array({ee})},
                                 {"target", pick(rng, states)}};
                if (!own.empty()) e["subjects"] = nlohmann::json::array({pick(rng, own)});
                iv.ops.push_back(add_entity(EntityKind::Evaluation, e));
                if (chance(rng, 0.6))
                    iv.ops.push_back(add_entity(EntityKind::Incentive,
                                                nlohmann::json{{"id", "i_" + id},
                                                               {"kind", "Reward"},
                                                               {"evaluation", id},
                                                               {"recipients", nlohmann::json::array({ee})}}));
                break;
            }
            case 1: {
                if (agents.size() < 2) continue;
                IdSet parts = pick_some(rng, agents, 2, 3);
                if (parts.size() < 2) continue;
                iv = add_coordination_mechanism(parts, "m_new" + std::to_string(attempt));
                break;
            }
            case 2: {
                if (m.evaluations.empty()) continue;
                const Id e = pick(rng, keys(m.evaluations));
                IdSet ees = evaluatee_individuals(m, e);
                std::vector<Id> v(ees.begin(), ees.end());
                if (v.empty()) continue;
                iv.ops.push_back(add_entity(EntityKind::Incentive,
                                            nlohmann::json{{"id", "i_new" + std::to_string(attempt)},
                                                           {"kind", chance(rng, 0.5) ? "Reward" : "Sanction"},
                                                           {"evaluation", e},
                                                           {"recipients", std::vector<Id>{pick(rng, v)}}}));
                break;
            }
            case 3: {
                if (activities.size() < 2) continue;
                const Id a = pick(rng, activities), b = pick(rng, activities);
                if (a == b || m.relations.contains(Relation::depends_on(a, b))) continue;
                iv.ops.push_back(add_relation(Relation::depends_on(a, b)));
                break;
            }
            default: {
                if (activities.size() < 2 || states.empty()) continue;
                const Id a = pick(rng, activities), b = pick(rng, activities);
                if (a == b) continue;
                Relation r = Relation::complements(a, b, pick(rng, states));
                if (m.relations.contains(r)) continue;
                iv.ops.push_back(add_relation(r));
                break;
            }
        }
        try {
            apply_intervention(m, iv);
            return iv;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

}  // namespace orgrisk::testing
