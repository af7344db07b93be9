#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orgrisk/errors.hpp"
#include "orgrisk/model.hpp"

namespace orgrisk {

enum class Severity { Error, Warning };
std::string_view to_string(Severity s);

// One broken invariant. Referential-integrity and type-shape breaches are
// Errors and block inference; performer/task mismatches are Warnings.
struct Violation {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::vector<Id> entity_ids;  // sorted

    bool operator==(const Violation&) const = default;
};

// Every invariant violation in `model`, sorted by first entity id, then code,
// then message. Empty iff the model is valid. Never throws on bad input.
std::vector<Violation> validate_model(const OrgModel& model);

bool has_errors(const std::vector<Violation>& violations);

// "Error CODE [id1,id2]: message"
std::string format_violation(const Violation& v);

class InvalidModelError : public Error {
public:
    explicit InvalidModelError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

}  // namespace orgrisk
