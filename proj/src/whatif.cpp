#include "orgrisk/whatif.hpp"

#include <algorithm>

#include "json_locator.hpp"
#include "orgrisk/scenario_io.hpp"

namespace orgrisk {

using nlohmann::json;

std::string_view to_string(OpKind k) {
    switch (k) {
        case OpKind::AddEntity: return "AddEntity";
        case OpKind::RemoveEntity: return "RemoveEntity";
        case OpKind::AddRelation: return "AddRelation";
        case OpKind::RemoveRelation: return "RemoveRelation";
        case OpKind::ModifyField: return "ModifyField";
    }
    return "?";
}

Intervention& Intervention::then(const Intervention& other) {
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    return *this;
}

InterventionOp add_entity(const OrgModel& source, EntityKind kind, const Id& id) {
    return add_entity(kind, entity_to_json(source, kind, id));
}

InterventionOp add_entity(EntityKind kind, json record) {
    InterventionOp op{OpKind::AddEntity, kind, {}, {}, std::move(record)};
    if (op.payload.is_object() && op.payload.contains("id") && op.payload["id"].is_string())
        op.id = op.payload["id"].get<std::string>();
    return op;
}

InterventionOp remove_entity(const Id& id) { return {OpKind::RemoveEntity, std::nullopt, id, {}, {}}; }

InterventionOp add_relation(const Relation& r) {
    return {OpKind::AddRelation, std::nullopt, {}, {}, relation_to_json(r)};
}

InterventionOp remove_relation(const Relation& r) {
    return {OpKind::RemoveRelation, std::nullopt, {}, {}, relation_to_json(r)};
}

InterventionOp modify_field(EntityKind kind, const Id& id, std::string field, json value) {
    return {OpKind::ModifyField, kind, id, std::move(field), std::move(value)};
}

WouldInvalidateError::WouldInvalidateError(std::vector<Violation> violations)
    : Error("WouldInvalidate",
            violations.empty() ? "intervention would invalidate the model"
                               : "intervention would invalidate the model: " +
                                     format_violation(violations.front())),
      violations_(std::move(violations)) {}

namespace {

std::string op_pointer(std::size_t i) { return "/ops/" + std::to_string(i); }

void apply_op(OrgModel& m, const InterventionOp& op, std::size_t index) {
    const std::string ptr = op_pointer(index);
    switch (op.op) {
        case OpKind::AddEntity: {
            if (!op.kind) throw UnknownTargetError("AddEntity needs an entity collection");
            const Id id = op.payload.is_object() && op.payload.contains("id") && op.payload["id"].is_string()
                              ? op.payload["id"].get<std::string>()
                              : Id{};
            if (!id.empty() && m.contains(id))
                throw WouldInvalidateError({Violation{Severity::Error, "DUPLICATE_ID",
                                                      "id '" + id + "' is already used", {id}}});
            insert_entity(m, *op.kind, op.payload, ptr + "/record");
            break;
        }
        case OpKind::RemoveEntity: {
            auto kinds = m.kinds_of(op.id);
            if (op.kind) {
                if (std::find(kinds.begin(), kinds.end(), *op.kind) == kinds.end())
                    throw UnknownTargetError("no " + std::string(collection_name(*op.kind)) +
                                             " entity '" + op.id + "' to remove");
                erase_entity(m, *op.kind, op.id);
            } else {
                if (kinds.empty()) throw UnknownTargetError("no entity '" + op.id + "' to remove");
                for (EntityKind k : kinds) erase_entity(m, k, op.id);
            }
            break;
        }
        case OpKind::AddRelation:
            m.add(relation_from_json(op.payload, ptr + "/relation"));
            break;
        case OpKind::RemoveRelation: {
            Relation r = relation_from_json(op.payload, ptr + "/relation");
            if (!m.relations.erase(r))
                throw UnknownTargetError("relation " + relation_to_json(r).dump() + " is not asserted");
            break;
        }
        case OpKind::ModifyField: {
            auto kinds = m.kinds_of(op.id);
            if (!op.kind || std::find(kinds.begin(), kinds.end(), *op.kind) == kinds.end())
                throw UnknownTargetError("no entity '" + op.id + "' to modify");
            if (op.field == "id")
                throw ScenarioParseError(
                    {ParseError{{0, 0, ptr + "/field"}, "IMMUTABLE_FIELD", "the id of an entity cannot change"}});
            json record = entity_to_json(m, *op.kind, op.id);
            if (op.payload.is_null())
                record.erase(op.field);
            else
                record[op.field] = op.payload;
            erase_entity(m, *op.kind, op.id);
            insert_entity(m, *op.kind, record, ptr + "/value");
            break;
        }
    }
}

}  // namespace

OrgModel apply_intervention(const OrgModel& base, const Intervention& iv) {
    OrgModel m = base;
    for (std::size_t i = 0; i < iv.ops.size(); ++i) apply_op(m, iv.ops[i], i);
    auto violations = validate_model(m);
    if (has_errors(violations)) {
        violations.erase(std::remove_if(violations.begin(), violations.end(),
                                        [](const Violation& v) { return v.severity != Severity::Error; }),
                         violations.end());
        throw WouldInvalidateError(std::move(violations));
    }
    return m;
}

// --- templates ---------------------------------------------------------------

Intervention add_coordination_mechanism(const IdSet& participants, std::optional<Id> id) {
    Id mid = id.value_or("m");
    if (!id)
        for (const auto& p : participants) mid += "_" + p;
    json record{{"id", mid}, {"participants", std::vector<Id>(participants.begin(), participants.end())}};
    return Intervention{{add_entity(EntityKind::Mechanism, std::move(record))}};
}

Intervention add_individual_evaluation(const Id& id, const Id& evaluator, const Id& evaluatee,
                                       const Id& subject, const Id& target, std::optional<Id> reward) {
    json e{{"id", id},
           {"evaluators", json::array({evaluator})},
           {"evaluatees", json::array({evaluatee})},
           {"subjects", json::array({subject})},
           {"target", target}};
    Intervention iv;
    if (reward) e["incentives"] = json::array({*reward});
    iv.ops.push_back(add_entity(EntityKind::Evaluation, std::move(e)));
    if (reward)
        iv.ops.push_back(add_entity(EntityKind::Incentive, json{{"id", *reward},
                                                                {"kind", "Reward"},
                                                                {"evaluation", id},
                                                                {"recipients", json::array({evaluatee})}}));
    return iv;
}

Intervention add_joint_evaluation(const Id& id, const IdSet& evaluators, const IdSet& evaluatees,
                                  const Id& target, const IdSet& subjects, const Id& reward) {
    auto list = [](const IdSet& s) { return std::vector<Id>(s.begin(), s.end()); };
    json e{{"id", id},
           {"evaluators", list(evaluators)},
           {"evaluatees", list(evaluatees)},
           {"target", target},
           {"incentives", json::array({reward})}};
    if (!subjects.empty()) e["subjects"] = list(subjects);
    Intervention iv;
    iv.ops.push_back(add_entity(EntityKind::Evaluation, std::move(e)));
    iv.ops.push_back(add_entity(EntityKind::Incentive, json{{"id", reward},
                                                            {"kind", "Reward"},
                                                            {"evaluation", id},
                                                            {"recipients", list(evaluatees)}}));
    return iv;
}

const std::vector<std::string_view>& template_names() {
    static const std::vector<std::string_view> names = {
        "add-coordination-mechanism", "add-individual-evaluation", "add-joint-evaluation"};
    return names;
}

// --- documents ---------------------------------------------------------------

namespace {

class OpReader {
public:
    explicit OpReader(const detail::JsonLocator* locator) : locator_(locator) {}

    std::vector<ParseError> errors;

    void fail(const std::string& ptr, std::string code, std::string message) {
        Location loc{0, 0, ptr};
        if (locator_) {
            auto p = locator_->at(ptr);
            loc.line = p.line;
            loc.column = p.column;
        }
        errors.push_back({std::move(loc), std::move(code), std::move(message)});
    }

    void absorb(const ScenarioParseError& e) {
        for (const auto& pe : e.errors()) fail(pe.location.pointer, pe.code, pe.message);
    }

    std::optional<std::string> str(const json& o, const std::string& ptr, const char* key, bool required = true) {
        auto it = o.find(key);
        if (it == o.end()) {
            if (required) fail(ptr, "MISSING_FIELD", std::string("missing field '") + key + "'");
            return std::nullopt;
        }
        if (!it->is_string() || it->get_ref<const std::string&>().empty()) {
            fail(ptr + "/" + key, "WRONG_TYPE", std::string("field '") + key + "' must be a non-empty string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<IdSet> ids(const json& o, const std::string& ptr, const char* key, bool required = true) {
        auto it = o.find(key);
        if (it == o.end()) {
            if (required) fail(ptr, "MISSING_FIELD", std::string("missing field '") + key + "'");
            return required ? std::nullopt : std::optional<IdSet>(IdSet{});
        }
        IdSet out;
        bool ok = it->is_array();
        if (ok)
            for (const auto& v : *it) {
                if (!v.is_string()) ok = false;
                else out.insert(v.get<std::string>());
            }
        if (!ok) {
            fail(ptr + "/" + key, "WRONG_TYPE", std::string("field '") + key + "' must be an array of ids");
            return std::nullopt;
        }
        return out;
    }

    std::optional<EntityKind> collection(const json& o, const std::string& ptr) {
        auto name = str(o, ptr, "collection");
        if (!name) return std::nullopt;
        auto kind = kind_from_collection(*name);
        if (!kind) fail(ptr + "/collection", "INVALID_ENUM", "unknown collection '" + *name + "'");
        return kind;
    }

    void only(const json& o, const std::string& ptr, std::initializer_list<std::string_view> allowed) {
        for (const auto& [key, _] : o.items())
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                fail(ptr + "/" + detail::pointer_escape(key), "UNKNOWN_FIELD", "unexpected field '" + key + "'");
    }

    // Checks a record decodes, without applying it.
    void check_record(EntityKind kind, const json& record, const std::string& ptr) {
        try {
            OrgModel scratch;
            insert_entity(scratch, kind, record, ptr);
        } catch (const ScenarioParseError& e) {
            absorb(e);
        }
    }

    void check_relation(const json& record, const std::string& ptr) {
        try {
            relation_from_json(record, ptr);
        } catch (const ScenarioParseError& e) {
            absorb(e);
        }
    }

    void expand_template(const json& o, const std::string& ptr, Intervention& out) {
        only(o, ptr, {"op", "template", "args"});
        auto name = str(o, ptr, "template");
        if (!name) return;
        auto ait = o.find("args");
        if (ait == o.end() || !ait->is_object()) {
            fail(ptr, "MISSING_FIELD", "template needs an 'args' object");
            return;
        }
        const json& a = *ait;
        const std::string ap = ptr + "/args";
        if (*name == "add-coordination-mechanism") {
            only(a, ap, {"participants", "id"});
            auto parts = ids(a, ap, "participants");
            auto id = str(a, ap, "id", false);
            if (parts) out.then(add_coordination_mechanism(*parts, id));
        } else if (*name == "add-individual-evaluation") {
            only(a, ap, {"id", "evaluator", "evaluatee", "subject", "target", "reward"});
            auto id = str(a, ap, "id"), ev = str(a, ap, "evaluator"), ee = str(a, ap, "evaluatee"),
                 su = str(a, ap, "subject"), ta = str(a, ap, "target"), re = str(a, ap, "reward", false);
            if (id && ev && ee && su && ta) out.then(add_individual_evaluation(*id, *ev, *ee, *su, *ta, re));
        } else if (*name == "add-joint-evaluation") {
            only(a, ap, {"id", "evaluators", "evaluatees", "target", "subjects", "reward"});
            auto id = str(a, ap, "id"), ta = str(a, ap, "target"), re = str(a, ap, "reward");
            auto evs = ids(a, ap, "evaluators"), ees = ids(a, ap, "evaluatees"),
                 sus = ids(a, ap, "subjects", false);
            if (id && ta && re && evs && ees && sus)
                out.then(add_joint_evaluation(*id, *evs, *ees, *ta, *sus, *re));
        } else {
            fail(ptr + "/template", "UNKNOWN_TEMPLATE", "unknown intervention template '" + *name + "'");
        }
    }

    void op(const json& o, const std::string& ptr, Intervention& out) {
        if (!o.is_object()) {
            fail(ptr, "WRONG_TYPE", "expected an object");
            return;
        }
        auto name = str(o, ptr, "op");
        if (!name) return;
        if (*name == "Template") return expand_template(o, ptr, out);
        if (*name == "AddEntity") {
            only(o, ptr, {"op", "collection", "record"});
            auto kind = collection(o, ptr);
            if (!o.contains("record")) fail(ptr, "MISSING_FIELD", "missing field 'record'");
            if (!kind || !o.contains("record")) return;
            check_record(*kind, o["record"], ptr + "/record");
            out.ops.push_back(add_entity(*kind, o["record"]));
        } else if (*name == "RemoveEntity") {
            only(o, ptr, {"op", "collection", "id"});
            auto id = str(o, ptr, "id");
            std::optional<EntityKind> kind;
            if (o.contains("collection")) {
                kind = collection(o, ptr);
                if (!kind) return;
            }
            if (!id) return;
            InterventionOp r = remove_entity(*id);
            r.kind = kind;
            out.ops.push_back(std::move(r));
        } else if (*name == "AddRelation" || *name == "RemoveRelation") {
            only(o, ptr, {"op", "relation"});
            if (!o.contains("relation")) {
                fail(ptr, "MISSING_FIELD", "missing field 'relation'");
                return;
            }
            check_relation(o["relation"], ptr + "/relation");
            out.ops.push_back({*name == "AddRelation" ? OpKind::AddRelation : OpKind::RemoveRelation,
                               std::nullopt, {}, {}, o["relation"]});
        } else if (*name == "ModifyField") {
            only(o, ptr, {"op", "collection", "id", "field", "value"});
            auto kind = collection(o, ptr);
            auto id = str(o, ptr, "id");
            auto field = str(o, ptr, "field");
            if (!o.contains("value")) fail(ptr, "MISSING_FIELD", "missing field 'value'");
            if (kind && id && field && o.contains("value"))
                out.ops.push_back(modify_field(*kind, *id, *field, o["value"]));
        } else {
            fail(ptr + "/op", "INVALID_ENUM", "unknown op '" + *name + "'");
        }
    }

    Intervention document(const json& doc) {
        Intervention iv;
        if (!doc.is_object()) {
            fail("", "WRONG_TYPE", "expected an object");
            return iv;
        }
        only(doc, "", {"formatVersion", "ops"});
        if (auto v = str(doc, "", "formatVersion", false); v && *v != kFormatVersion) {
            fail("/formatVersion", "UNSUPPORTED_VERSION", "format version '" + *v + "' is not supported");
            return iv;
        }
        auto it = doc.find("ops");
        if (it == doc.end()) return iv;
        if (!it->is_array()) {
            fail("/ops", "WRONG_TYPE", "'ops' must be an array");
            return iv;
        }
        for (std::size_t i = 0; i < it->size(); ++i) op((*it)[i], op_pointer(i), iv);
        return iv;
    }

private:
    const detail::JsonLocator* locator_;
};

json op_to_json(const InterventionOp& op) {
    json j{{"op", std::string(to_string(op.op))}};
    switch (op.op) {
        case OpKind::AddEntity:
            j["collection"] = std::string(collection_name(op.kind.value_or(EntityKind::Agent)));
            j["record"] = op.payload;
            break;
        case OpKind::RemoveEntity:
            if (op.kind) j["collection"] = std::string(collection_name(*op.kind));
            j["id"] = op.id;
            break;
        case OpKind::AddRelation:
        case OpKind::RemoveRelation: j["relation"] = op.payload; break;
        case OpKind::ModifyField:
            j["collection"] = std::string(collection_name(op.kind.value_or(EntityKind::Agent)));
            j["id"] = op.id;
            j["field"] = op.field;
            j["value"] = op.payload;
            break;
    }
    return j;
}

}  // namespace

Intervention intervention_from_json(const json& doc) {
    OpReader r(nullptr);
    Intervention iv = r.document(doc);
    if (!r.errors.empty()) throw ScenarioParseError(std::move(r.errors));
    return iv;
}

json intervention_to_json(const Intervention& iv) {
    json ops = json::array();
    for (const auto& op : iv.ops) ops.push_back(op_to_json(op));
    return json{{"formatVersion", std::string(kFormatVersion)}, {"ops", std::move(ops)}};
}

Intervention parse_intervention(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto p = detail::position_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ScenarioParseError({ParseError{{p.line, p.column, ""}, "SYNTAX", e.what()}});
    }
    detail::JsonLocator locator(text);
    OpReader r(&locator);
    Intervention iv = r.document(doc);
    if (!r.errors.empty()) throw ScenarioParseError(std::move(r.errors));
    return iv;
}

// --- diffs -------------------------------------------------------------------

InferenceDiff diff_inferences(const InferenceResult& before, const InferenceResult& after) {
    auto relevant = [](const std::map<Fact, Stratum>& facts) {
        std::vector<Fact> out;
        for (const auto& [f, s] : facts)
            if (s != Stratum::S0) out.push_back(f);
        return out;
    };
    const auto a = relevant(before.facts);
    const auto b = relevant(after.facts);
    InferenceDiff d;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.added));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.removed));
    std::vector<Fact> same;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(same));
    for (const auto& f : same) ++d.unchanged[f.predicate];
    return d;
}

json diff_to_json(const InferenceDiff& d) {
    auto facts = [](const std::vector<Fact>& fs) {
        json arr = json::array();
        for (const auto& f : fs) arr.push_back(json{{"fact", to_string(f)}, {"factId", fact_id(f)}});
        return arr;
    };
    json unchanged = json::object();
    for (const auto& [p, n] : d.unchanged) unchanged[p] = n;
    return json{{"added", facts(d.added)}, {"removed", facts(d.removed)}, {"unchanged", std::move(unchanged)}};
}

InferenceDiff diff_from_json(const json& doc) {
    auto facts = [](const json& arr) {
        std::vector<Fact> out;
        for (const auto& e : arr) {
            auto f = parse_fact(e.at("fact").get<std::string>());
            if (!f) throw Error("InvalidDiff", "malformed fact in diff");
            out.push_back(*f);
        }
        return out;
    };
    try {
        InferenceDiff d;
        d.added = facts(doc.at("added"));
        d.removed = facts(doc.at("removed"));
        for (const auto& [p, n] : doc.at("unchanged").items()) d.unchanged[p] = n.get<std::size_t>();
        return d;
    } catch (const json::exception& e) {
        throw Error("InvalidDiff", e.what());
    }
}

std::string render_diff(const InferenceDiff& d) {
    if (d.empty()) return "no changes\n";
    std::string out;
    for (const auto& f : d.removed) out += "- " + to_string(f) + "\n";
    for (const auto& f : d.added) out += "+ " + to_string(f) + "\n";
    return out;
}

}  // namespace orgrisk
