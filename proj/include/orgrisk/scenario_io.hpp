#pragma once

// Scenario documents (.orgm): a JSON object with `formatVersion`,
// `entities` (one array per entity kind) and `relations`. References are
// string ids. Serialization is canonical: keys sorted, records sorted by
// id, symmetric relations in id order.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orgrisk/errors.hpp"
#include "orgrisk/model.hpp"

namespace orgrisk {

inline constexpr std::string_view kFormatVersion = "1.0";

struct Location {
    int line = 0;    // 1-based; 0 when the source text is unknown
    int column = 0;
    std::string pointer;  // JSON pointer of the offending value
};

struct ParseError {
    Location location;
    std::string code;  // SYNTAX, UNSUPPORTED_VERSION, DUPLICATE_ID, MISSING_FIELD, ...
    std::string message;
};

// "3:17 /entities/agents/2/id: DUPLICATE_ID id 'wim' is already used"
std::string format_parse_error(const ParseError& e);

class ScenarioParseError : public Error {
public:
    explicit ScenarioParseError(std::vector<ParseError> errors);
    const std::vector<ParseError>& errors() const noexcept { return errors_; }
    bool has(std::string_view code) const;

private:
    std::vector<ParseError> errors_;
};

// Parses a scenario document. Reports every syntax/schema problem at once
// via ScenarioParseError; never returns a partial model. The result is not
// semantically validated (see validate_model).
OrgModel parse_scenario(std::string_view text);

std::string serialize_scenario(const OrgModel& model);

nlohmann::json scenario_to_json(const OrgModel& model);

// Decodes an already-parsed document (locations carry pointers only).
OrgModel scenario_from_json(const nlohmann::json& doc);

// Per-record codecs, shared with intervention documents.
std::string_view collection_name(EntityKind kind);
std::optional<EntityKind> kind_from_collection(std::string_view name);

// Throws UnknownEntityError if `id` is not an entity of `kind`.
nlohmann::json entity_to_json(const OrgModel& model, EntityKind kind, const Id& id);

// Decodes one record of `kind` and inserts it (replacing any entity of the
// same kind and id). Throws ScenarioParseError on schema errors; `pointer`
// prefixes error locations.
void insert_entity(OrgModel& model, EntityKind kind, const nlohmann::json& record,
                   const std::string& pointer = "");

// Returns false if no entity of `kind` has `id`.
bool erase_entity(OrgModel& model, EntityKind kind, const Id& id);

nlohmann::json relation_to_json(const Relation& r);
Relation relation_from_json(const nlohmann::json& record, const std::string& pointer = "");

nlohmann::json value_to_json(const Value& v);

}  // namespace orgrisk
