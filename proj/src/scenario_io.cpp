#include "orgrisk/scenario_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json_locator.hpp"

namespace orgrisk {

using nlohmann::json;

std::string format_parse_error(const ParseError& e) {
    std::string out;
    if (e.location.line > 0)
        out += std::to_string(e.location.line) + ":" + std::to_string(e.location.column) + " ";
    if (!e.location.pointer.empty()) out += e.location.pointer + ": ";
    out += e.code + " " + e.message;
    return out;
}

namespace {

std::string summarize(const std::vector<ParseError>& errors) {
    if (errors.empty()) return "scenario parse failed";
    std::string out = format_parse_error(errors.front());
    if (errors.size() > 1) out += " (+" + std::to_string(errors.size() - 1) + " more)";
    return out;
}

}  // namespace

ScenarioParseError::ScenarioParseError(std::vector<ParseError> errors)
    : Error("ParseErrors", summarize(errors)), errors_(std::move(errors)) {}

bool ScenarioParseError::has(std::string_view code) const {
    return std::any_of(errors_.begin(), errors_.end(),
                       [&](const ParseError& e) { return e.code == code; });
}

namespace {

struct CollectionInfo {
    EntityKind kind;
    std::string_view name;
};

constexpr CollectionInfo kCollections[] = {
    {EntityKind::Agent, "agents"},
    {EntityKind::Goal, "goals"},
    {EntityKind::Task, "tasks"},
    {EntityKind::Activity, "activities"},
    {EntityKind::State, "states"},
    {EntityKind::Spec, "specs"},
    {EntityKind::Characteristic, "characteristics"},
    {EntityKind::Resource, "resources"},
    {EntityKind::Evaluation, "evaluations"},
    {EntityKind::Incentive, "incentives"},
    {EntityKind::Mechanism, "mechanisms"},
};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view text, const Enum (&values)[N]) {
    for (Enum v : values)
        if (to_string(v) == text) return v;
    return std::nullopt;
}

constexpr AgentKind kAgentKinds[] = {AgentKind::Individual, AgentKind::Collective};
constexpr Form kForms[] = {Form::Atomic, Form::Conjunction, Form::Disjunction};
constexpr Operator kOperators[] = {Operator::LE, Operator::GE, Operator::EQ, Operator::NE};
constexpr IncentiveKind kIncentiveKinds[] = {IncentiveKind::Reward, IncentiveKind::Sanction};
constexpr CharacteristicKind kCharacteristicKinds[] = {CharacteristicKind::Activity,
                                                       CharacteristicKind::State};
constexpr RelationKind kRelationKinds[] = {RelationKind::MemberOf, RelationKind::DependsOn,
                                           RelationKind::StrategicComplements,
                                           RelationKind::StrategicSubstitutes};

// Schema reader over a parsed document. Collects every problem instead of
// stopping at the first.
class Decoder {
public:
    explicit Decoder(const detail::JsonLocator* locator = nullptr) : locator_(locator) {}

    std::vector<ParseError>& errors() { return errors_; }

    void fail(const std::string& pointer, std::string code, std::string message) {
        Location loc{0, 0, pointer};
        if (locator_) {
            auto p = locator_->at(pointer);
            loc.line = p.line;
            loc.column = p.column;
        }
        errors_.push_back({std::move(loc), std::move(code), std::move(message)});
    }

    bool object(const json& j, const std::string& ptr) {
        if (j.is_object()) return true;
        fail(ptr, "WRONG_TYPE", "expected an object");
        return false;
    }

    // Flags keys outside `allowed`.
    void only(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> allowed) {
        for (const auto& [key, _] : obj.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                fail(ptr + "/" + detail::pointer_escape(key), "UNKNOWN_FIELD",
                     "unexpected field '" + key + "'");
        }
    }

    std::optional<std::string> string(const json& obj, const std::string& ptr, const char* key,
                                      bool required) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(ptr, "MISSING_FIELD", std::string("missing field '") + key + "'");
            return std::nullopt;
        }
        if (!it->is_string()) {
            fail(ptr + "/" + key, "WRONG_TYPE", std::string("field '") + key + "' must be a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    Id required_id(const json& obj, const std::string& ptr, const char* key) {
        auto s = string(obj, ptr, key, true);
        if (s && s->empty()) fail(ptr + "/" + key, "EMPTY_ID", std::string("field '") + key + "' is empty");
        return s.value_or("");
    }

    IdSet id_set(const json& obj, const std::string& ptr, const char* key, bool required) {
        IdSet out;
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(ptr, "MISSING_FIELD", std::string("missing field '") + key + "'");
            return out;
        }
        const std::string here = ptr + "/" + key;
        if (!it->is_array()) {
            fail(here, "WRONG_TYPE", std::string("field '") + key + "' must be an array of ids");
            return out;
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& v = (*it)[i];
            if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
                fail(here + "/" + std::to_string(i), "WRONG_TYPE", "expected a non-empty id string");
                continue;
            }
            if (!out.insert(v.get<std::string>()).second)
                fail(here + "/" + std::to_string(i), "DUPLICATE_REFERENCE",
                     "id '" + v.get<std::string>() + "' is listed twice");
        }
        return out;
    }

    template <typename Enum, std::size_t N>
    std::optional<Enum> enumeration(const json& obj, const std::string& ptr, const char* key,
                                    const Enum (&values)[N], bool required) {
        auto s = string(obj, ptr, key, required);
        if (!s) return std::nullopt;
        if (auto v = lookup(*s, values)) return v;
        std::string allowed;
        for (Enum v : values) allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(v));
        fail(ptr + "/" + key, "INVALID_ENUM", "'" + *s + "' is not one of " + allowed);
        return std::nullopt;
    }

    std::optional<Value> value(const json& obj, const std::string& ptr) {
        auto it = obj.find("value");
        if (it == obj.end()) return std::nullopt;
        const std::string here = ptr + "/value";
        if (!object(*it, here)) return std::nullopt;
        const json& v = *it;
        if (v.contains("num")) {
            only(v, here, {"num", "unit"});
            if (!v["num"].is_number()) {
                fail(here + "/num", "WRONG_TYPE", "'num' must be a number");
                return std::nullopt;
            }
            Quantity q{v["num"].get<double>(), string(v, here, "unit", false).value_or("")};
            return Value{q};
        }
        if (v.contains("text")) {
            only(v, here, {"text"});
            if (auto s = string(v, here, "text", true)) return Value{Text{*s}};
            return std::nullopt;
        }
        if (v.contains("bool")) {
            only(v, here, {"bool"});
            if (!v["bool"].is_boolean()) {
                fail(here + "/bool", "WRONG_TYPE", "'bool' must be true or false");
                return std::nullopt;
            }
            return Value{Flag{v["bool"].get<bool>()}};
        }
        fail(here, "INVALID_VALUE", "value must be one of {num, unit}, {text}, {bool}");
        return std::nullopt;
    }

    Condition condition(const json& r, const std::string& ptr) {
        only(r, ptr, {"id", "form", "characteristic", "operator", "value", "children"});
        Condition c;
        c.id = required_id(r, ptr, "id");
        c.form = enumeration(r, ptr, "form", kForms, true).value_or(Form::Atomic);
        c.characteristic = string(r, ptr, "characteristic", false);
        c.op = enumeration(r, ptr, "operator", kOperators, false);
        c.value = value(r, ptr);
        c.children = id_set(r, ptr, "children", false);
        return c;
    }

    void entity(OrgModel& m, EntityKind kind, const json& r, const std::string& ptr) {
        if (!object(r, ptr)) return;
        switch (kind) {
            case EntityKind::Agent: {
                only(r, ptr, {"id", "kind", "name"});
                Agent a{required_id(r, ptr, "id"),
                        enumeration(r, ptr, "kind", kAgentKinds, true).value_or(AgentKind::Individual),
                        string(r, ptr, "name", false).value_or("")};
                m.add(std::move(a));
                break;
            }
            case EntityKind::Goal: {
                only(r, ptr, {"id", "desiredState"});
                m.add(Goal{required_id(r, ptr, "id"), required_id(r, ptr, "desiredState")});
                break;
            }
            case EntityKind::Task: {
                only(r, ptr, {"id", "agent", "goal"});
                m.add(Task{required_id(r, ptr, "id"), required_id(r, ptr, "agent"),
                           required_id(r, ptr, "goal")});
                break;
            }
            case EntityKind::Activity: {
                only(r, ptr, {"id", "performers", "partOfTask", "causes", "enabledBy", "requires",
                              "produces", "characteristics"});
                Activity a;
                a.id = required_id(r, ptr, "id");
                a.performers = id_set(r, ptr, "performers", true);
                a.part_of_task = string(r, ptr, "partOfTask", false);
                a.causes = id_set(r, ptr, "causes", false);
                a.enabled_by = id_set(r, ptr, "enabledBy", false);
                a.requires_resources = id_set(r, ptr, "requires", false);
                a.produces = id_set(r, ptr, "produces", false);
                a.characteristics = id_set(r, ptr, "characteristics", false);
                m.add(std::move(a));
                break;
            }
            case EntityKind::Characteristic: {
                only(r, ptr, {"id", "kind", "name"});
                m.add(Characteristic{
                    required_id(r, ptr, "id"),
                    enumeration(r, ptr, "kind", kCharacteristicKinds, true)
                        .value_or(CharacteristicKind::Activity),
                    string(r, ptr, "name", false).value_or("")});
                break;
            }
            case EntityKind::Spec: m.add_spec(condition(r, ptr)); break;
            case EntityKind::State: m.add_state(condition(r, ptr)); break;
            case EntityKind::Evaluation: {
                only(r, ptr, {"id", "evaluators", "evaluatees", "target", "subjects", "incentives"});
                Evaluation e;
                e.id = required_id(r, ptr, "id");
                e.evaluators = id_set(r, ptr, "evaluators", true);
                e.evaluatees = id_set(r, ptr, "evaluatees", true);
                e.target = required_id(r, ptr, "target");
                e.subjects = id_set(r, ptr, "subjects", false);
                e.incentives = id_set(r, ptr, "incentives", false);
                m.add(std::move(e));
                break;
            }
            case EntityKind::Incentive: {
                only(r, ptr, {"id", "kind", "evaluation", "recipients"});
                Incentive i;
                i.id = required_id(r, ptr, "id");
                i.kind = enumeration(r, ptr, "kind", kIncentiveKinds, true).value_or(IncentiveKind::Reward);
                i.evaluation = required_id(r, ptr, "evaluation");
                i.recipients = id_set(r, ptr, "recipients", true);
                m.add(std::move(i));
                break;
            }
            case EntityKind::Mechanism: {
                only(r, ptr, {"id", "participants", "description"});
                m.add(CoordinationMechanism{required_id(r, ptr, "id"),
                                            id_set(r, ptr, "participants", true),
                                            string(r, ptr, "description", false).value_or("")});
                break;
            }
            case EntityKind::Resource: {
                only(r, ptr, {"id", "name"});
                m.add(Resource{required_id(r, ptr, "id"), string(r, ptr, "name", false).value_or("")});
                break;
            }
        }
    }

    std::optional<Relation> relation(const json& r, const std::string& ptr) {
        if (!object(r, ptr)) return std::nullopt;
        auto kind = enumeration(r, ptr, "kind", kRelationKinds, true);
        if (!kind) return std::nullopt;
        switch (*kind) {
            case RelationKind::MemberOf: {
                only(r, ptr, {"kind", "member", "collective"});
                Id member = required_id(r, ptr, "member");
                Id collective = required_id(r, ptr, "collective");
                return Relation::member_of(member, collective);
            }
            case RelationKind::DependsOn: {
                only(r, ptr, {"kind", "dependent", "dependency"});
                Id dependent = required_id(r, ptr, "dependent");
                Id dependency = required_id(r, ptr, "dependency");
                return Relation::depends_on(dependent, dependency);
            }
            case RelationKind::StrategicComplements:
            case RelationKind::StrategicSubstitutes: {
                only(r, ptr, {"kind", "works", "state"});
                IdSet works = id_set(r, ptr, "works", true);
                Id state = required_id(r, ptr, "state");
                if (works.size() != 2) {
                    fail(ptr + "/works", "INVALID_ARITY", "'works' must name exactly two distinct works");
                    return std::nullopt;
                }
                Id a = *works.begin(), b = *works.rbegin();
                return *kind == RelationKind::StrategicComplements ? Relation::complements(a, b, state)
                                                                   : Relation::substitutes(a, b, state);
            }
        }
        return std::nullopt;
    }

    OrgModel document(const json& doc) {
        OrgModel m;
        if (!object(doc, "")) return m;
        only(doc, "", {"formatVersion", "entities", "relations"});
        auto version = string(doc, "", "formatVersion", true);
        if (version && *version != kFormatVersion) {
            fail("/formatVersion", "UNSUPPORTED_VERSION",
                 "format version '" + *version + "' is not supported (expected " +
                     std::string(kFormatVersion) + ")");
            return m;
        }

        // id -> pointers of every record declaring it
        std::map<Id, std::vector<std::string>> declared;
        if (auto it = doc.find("entities"); it != doc.end() && object(*it, "/entities")) {
            std::vector<std::string_view> names;
            for (const auto& c : kCollections) names.push_back(c.name);
            for (const auto& [key, _] : it->items())
                if (std::find(names.begin(), names.end(), key) == names.end())
                    fail("/entities/" + detail::pointer_escape(key), "UNKNOWN_FIELD",
                         "unknown entity collection '" + key + "'");
            for (const auto& c : kCollections) {
                auto arr = it->find(std::string(c.name));
                if (arr == it->end()) continue;
                const std::string ptr = "/entities/" + std::string(c.name);
                if (!arr->is_array()) {
                    fail(ptr, "WRONG_TYPE", "entity collection must be an array");
                    continue;
                }
                for (std::size_t i = 0; i < arr->size(); ++i) {
                    const std::string rp = ptr + "/" + std::to_string(i);
                    const json& rec = (*arr)[i];
                    if (rec.is_object() && rec.contains("id") && rec["id"].is_string())
                        declared[rec["id"].get<std::string>()].push_back(rp + "/id");
                    entity(m, c.kind, rec, rp);
                }
            }
        }
        for (const auto& [id, where] : declared) {
            if (where.size() < 2) continue;
            for (const auto& p : where)
                fail(p, "DUPLICATE_ID",
                     "id '" + id + "' is declared " + std::to_string(where.size()) + " times");
        }

        if (auto it = doc.find("relations"); it != doc.end()) {
            if (!it->is_array()) {
                fail("/relations", "WRONG_TYPE", "'relations' must be an array");
            } else {
                for (std::size_t i = 0; i < it->size(); ++i)
                    if (auto r = relation((*it)[i], "/relations/" + std::to_string(i)))
                        m.add(std::move(*r));
            }
        }
        return m;
    }

private:
    const detail::JsonLocator* locator_;
    std::vector<ParseError> errors_;
};

json ids(const IdSet& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

void put_ids(json& j, const char* key, const IdSet& s) {
    if (!s.empty()) j[key] = ids(s);
}

json condition_to_json(const Condition& c) {
    json j;
    j["id"] = c.id;
    j["form"] = std::string(to_string(c.form));
    if (c.characteristic) j["characteristic"] = *c.characteristic;
    if (c.op) j["operator"] = std::string(to_string(*c.op));
    if (c.value) j["value"] = value_to_json(*c.value);
    put_ids(j, "children", c.children);
    return j;
}

template <typename Map, typename F>
json records(const Map& m, F&& encode) {
    json arr = json::array();
    for (const auto& [_, v] : m) arr.push_back(encode(v));
    return arr;
}

void throw_if(std::vector<ParseError>& errors) {
    if (!errors.empty()) throw ScenarioParseError(std::move(errors));
}

}  // namespace

json value_to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Quantity>)
                return json{{"num", x.num}, {"unit", x.unit}};
            else if constexpr (std::is_same_v<T, Text>)
                return json{{"text", x.text}};
            else
                return json{{"bool", x.value}};
        },
        v);
}

std::string_view collection_name(EntityKind kind) {
    for (const auto& c : kCollections)
        if (c.kind == kind) return c.name;
    return "";
}

std::optional<EntityKind> kind_from_collection(std::string_view name) {
    for (const auto& c : kCollections)
        if (c.name == name) return c.kind;
    return std::nullopt;
}

json entity_to_json(const OrgModel& m, EntityKind kind, const Id& id) {
    auto missing = [&] { return UnknownEntityError(id); };
    switch (kind) {
        case EntityKind::Agent: {
            auto it = m.agents.find(id);
            if (it == m.agents.end()) throw missing();
            json j{{"id", id}, {"kind", std::string(to_string(it->second.kind))}};
            if (!it->second.name.empty()) j["name"] = it->second.name;
            return j;
        }
        case EntityKind::Goal: {
            auto it = m.goals.find(id);
            if (it == m.goals.end()) throw missing();
            return json{{"id", id}, {"desiredState", it->second.desired_state}};
        }
        case EntityKind::Task: {
            auto it = m.tasks.find(id);
            if (it == m.tasks.end()) throw missing();
            return json{{"id", id}, {"agent", it->second.agent}, {"goal", it->second.goal}};
        }
        case EntityKind::Activity: {
            auto it = m.activities.find(id);
            if (it == m.activities.end()) throw missing();
            const Activity& a = it->second;
            json j{{"id", id}, {"performers", ids(a.performers)}};
            if (a.part_of_task) j["partOfTask"] = *a.part_of_task;
            put_ids(j, "causes", a.causes);
            put_ids(j, "enabledBy", a.enabled_by);
            put_ids(j, "requires", a.requires_resources);
            put_ids(j, "produces", a.produces);
            put_ids(j, "characteristics", a.characteristics);
            return j;
        }
        case EntityKind::Characteristic: {
            auto it = m.characteristics.find(id);
            if (it == m.characteristics.end()) throw missing();
            json j{{"id", id}, {"kind", std::string(to_string(it->second.kind))}};
            if (!it->second.name.empty()) j["name"] = it->second.name;
            return j;
        }
        case EntityKind::Spec: {
            auto it = m.specs.find(id);
            if (it == m.specs.end()) throw missing();
            return condition_to_json(it->second);
        }
        case EntityKind::State: {
            auto it = m.states.find(id);
            if (it == m.states.end()) throw missing();
            return condition_to_json(it->second);
        }
        case EntityKind::Evaluation: {
            auto it = m.evaluations.find(id);
            if (it == m.evaluations.end()) throw missing();
            const Evaluation& e = it->second;
            json j{{"id", id},
                   {"evaluators", ids(e.evaluators)},
                   {"evaluatees", ids(e.evaluatees)},
                   {"target", e.target}};
            put_ids(j, "subjects", e.subjects);
            put_ids(j, "incentives", e.incentives);
            return j;
        }
        case EntityKind::Incentive: {
            auto it = m.incentives.find(id);
            if (it == m.incentives.end()) throw missing();
            const Incentive& i = it->second;
            return json{{"id", id},
                        {"kind", std::string(to_string(i.kind))},
                        {"evaluation", i.evaluation},
                        {"recipients", ids(i.recipients)}};
        }
        case EntityKind::Mechanism: {
            auto it = m.mechanisms.find(id);
            if (it == m.mechanisms.end()) throw missing();
            json j{{"id", id}, {"participants", ids(it->second.participants)}};
            if (!it->second.description.empty()) j["description"] = it->second.description;
            return j;
        }
        case EntityKind::Resource: {
            auto it = m.resources.find(id);
            if (it == m.resources.end()) throw missing();
            json j{{"id", id}};
            if (!it->second.name.empty()) j["name"] = it->second.name;
            return j;
        }
    }
    throw missing();
}

void insert_entity(OrgModel& model, EntityKind kind, const json& record, const std::string& pointer) {
    Decoder d;
    OrgModel scratch;
    d.entity(scratch, kind, record, pointer);
    throw_if(d.errors());
    // Move the single decoded record over.
    switch (kind) {
        case EntityKind::Agent: for (auto& [_, v] : scratch.agents) model.add(v); break;
        case EntityKind::Goal: for (auto& [_, v] : scratch.goals) model.add(v); break;
        case EntityKind::Task: for (auto& [_, v] : scratch.tasks) model.add(v); break;
        case EntityKind::Activity: for (auto& [_, v] : scratch.activities) model.add(v); break;
        case EntityKind::Characteristic:
            for (auto& [_, v] : scratch.characteristics) model.add(v);
            break;
        case EntityKind::Spec: for (auto& [_, v] : scratch.specs) model.add_spec(v); break;
        case EntityKind::State: for (auto& [_, v] : scratch.states) model.add_state(v); break;
        case EntityKind::Evaluation: for (auto& [_, v] : scratch.evaluations) model.add(v); break;
        case EntityKind::Incentive: for (auto& [_, v] : scratch.incentives) model.add(v); break;
        case EntityKind::Mechanism: for (auto& [_, v] : scratch.mechanisms) model.add(v); break;
        case EntityKind::Resource: for (auto& [_, v] : scratch.resources) model.add(v); break;
    }
}

bool erase_entity(OrgModel& m, EntityKind kind, const Id& id) {
    switch (kind) {
        case EntityKind::Agent: return m.agents.erase(id) > 0;
        case EntityKind::Goal: return m.goals.erase(id) > 0;
        case EntityKind::Task: return m.tasks.erase(id) > 0;
        case EntityKind::Activity: return m.activities.erase(id) > 0;
        case EntityKind::Characteristic: return m.characteristics.erase(id) > 0;
        case EntityKind::Spec: return m.specs.erase(id) > 0;
        case EntityKind::State: return m.states.erase(id) > 0;
        case EntityKind::Evaluation: return m.evaluations.erase(id) > 0;
        case EntityKind::Incentive: return m.incentives.erase(id) > 0;
        case EntityKind::Mechanism: return m.mechanisms.erase(id) > 0;
        case EntityKind::Resource: return m.resources.erase(id) > 0;
    }
    return false;
}

json relation_to_json(const Relation& r) {
    switch (r.kind) {
        case RelationKind::MemberOf:
            return json{{"kind", "MemberOf"}, {"member", r.first}, {"collective", r.second}};
        case RelationKind::DependsOn:
            return json{{"kind", "DependsOn"}, {"dependent", r.first}, {"dependency", r.second}};
        case RelationKind::StrategicComplements:
        case RelationKind::StrategicSubstitutes:
            return json{{"kind", std::string(to_string(r.kind))},
                        {"works", json::array({r.first, r.second})},
                        {"state", r.state.value_or("")}};
    }
    return json::object();
}

Relation relation_from_json(const json& record, const std::string& pointer) {
    Decoder d;
    auto r = d.relation(record, pointer);
    throw_if(d.errors());
    return *r;
}

json scenario_to_json(const OrgModel& m) {
    json entities = json::object();
    for (const auto& c : kCollections) {
        json arr = json::array();
        for (const auto& id : [&] {
                 std::vector<Id> out;
                 switch (c.kind) {
                     case EntityKind::Agent: for (auto& [k, _] : m.agents) out.push_back(k); break;
                     case EntityKind::Goal: for (auto& [k, _] : m.goals) out.push_back(k); break;
                     case EntityKind::Task: for (auto& [k, _] : m.tasks) out.push_back(k); break;
                     case EntityKind::Activity: for (auto& [k, _] : m.activities) out.push_back(k); break;
                     case EntityKind::Characteristic:
                         for (auto& [k, _] : m.characteristics) out.push_back(k);
                         break;
                     case EntityKind::Spec: for (auto& [k, _] : m.specs) out.push_back(k); break;
                     case EntityKind::State: for (auto& [k, _] : m.states) out.push_back(k); break;
                     case EntityKind::Evaluation: for (auto& [k, _] : m.evaluations) out.push_back(k); break;
                     case EntityKind::Incentive: for (auto& [k, _] : m.incentives) out.push_back(k); break;
                     case EntityKind::Mechanism: for (auto& [k, _] : m.mechanisms) out.push_back(k); break;
                     case EntityKind::Resource: for (auto& [k, _] : m.resources) out.push_back(k); break;
                 }
                 return out;
             }())
            arr.push_back(entity_to_json(m, c.kind, id));
        entities[std::string(c.name)] = std::move(arr);
    }
    json relations = json::array();
    for (const auto& r : m.relations) relations.push_back(relation_to_json(r));
    return json{{"formatVersion", std::string(kFormatVersion)},
                {"entities", std::move(entities)},
                {"relations", std::move(relations)}};
}

std::string serialize_scenario(const OrgModel& model) {
    return scenario_to_json(model).dump(2) + "\n";
}

OrgModel scenario_from_json(const json& doc) {
    Decoder d;
    OrgModel m = d.document(doc);
    throw_if(d.errors());
    return m;
}

OrgModel parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        auto p = detail::position_of(text, offset);
        std::string msg = e.what();
        if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
        throw ScenarioParseError({ParseError{{p.line, p.column, ""}, "SYNTAX", msg}});
    }
    detail::JsonLocator locator(text);
    Decoder d(&locator);
    OrgModel m = d.document(doc);
    throw_if(d.errors());
    return m;
}

}  // namespace orgrisk
