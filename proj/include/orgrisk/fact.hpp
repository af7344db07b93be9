#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orgrisk {

// Reporting partition of the fact store.
//   S0  asserted facts and their closures (membership, contribution, coverage)
//   S1  positive dependence (predictive need, outcome/epistemic/reward, coordination need)
//   S2  risks that quantify over absence (negation as failure)
//   S3  cooperation-risk aggregation
enum class Stratum { S0 = 0, S1 = 1, S2 = 2, S3 = 3 };

std::string_view to_string(Stratum s);
std::optional<Stratum> parse_stratum(std::string_view text);

// A ground atom, asserted or derived. Ordered by predicate name, then
// arguments, which is the canonical order used for every emitted listing.
struct Fact {
    std::string predicate;
    std::vector<std::string> args;

    auto operator<=>(const Fact&) const = default;
    bool operator==(const Fact&) const = default;
};

// "Predicate(a, b, c)"
std::string to_string(const Fact& f);

// Inverse of to_string. Returns nullopt on malformed text.
std::optional<Fact> parse_fact(std::string_view text);

// Stable content id: 16 hex digits of FNV-1a over to_string(f).
std::string fact_id(const Fact& f);

// 16 hex digits of FNV-1a 64 over `text`.
std::string content_hash(std::string_view text);

struct Derivation {
    Fact fact;
    std::string rule;              // "asserted" for facts taken from the model
    std::vector<Fact> premises;    // positive body facts, in rule-body order
    std::vector<Fact> absent;      // facts checked absent by negated literals

    auto operator<=>(const Derivation&) const = default;
    bool operator==(const Derivation&) const = default;
};

inline constexpr std::string_view kAssertedRule = "asserted";

}  // namespace orgrisk
