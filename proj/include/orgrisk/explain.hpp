#pragma once

// Proof trees and risk reports over an InferenceResult.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "orgrisk/engine.hpp"
#include "orgrisk/errors.hpp"

namespace orgrisk {

class FactNotFoundError : public Error {
public:
    explicit FactNotFoundError(const std::string& what)
        : Error("FactNotFound", "fact " + what + " is not in the inference result") {}
};

struct ProofTree {
    Fact root;
    std::string rule;            // kAssertedRule for leaves
    std::vector<Fact> absent;    // negated premises that held by absence
    std::vector<ProofTree> children;

    std::size_t depth() const;
    bool operator==(const ProofTree&) const = default;
};

// Minimal-depth proof of `fact`. Among equally shallow derivations the one
// with the smallest premise list (canonical fact order) wins, then the rule
// name. Throws FactNotFoundError.
ProofTree explain(const InferenceResult& result, const Fact& fact);

// Looks `id` up among the result's facts. Throws FactNotFoundError.
const Fact& fact_by_id(const InferenceResult& result, const std::string& id);

nlohmann::json proof_to_json(const ProofTree& tree);
ProofTree proof_from_json(const nlohmann::json& doc);

// Indented rendering, one node per line.
std::string render_proof(const ProofTree& tree);

// Fixed-template sentence for an S1-S3 fact; other facts render as is.
std::string describe(const Fact& fact);

// Cooperation-risk clauses that derive `fact`: "free-riding", "shirking",
// "sub-goal optimization", in that order. Empty for other predicates.
std::vector<std::string> cooperation_clauses(const InferenceResult& result, const Fact& fact);

struct ReportEntry {
    Fact fact;
    std::string fact_id;
    std::string text;
    std::vector<std::string> clauses;
    bool operator==(const ReportEntry&) const = default;
};

struct ReportSection {
    std::string predicate;
    std::string title;
    std::vector<ReportEntry> entries;
    bool operator==(const ReportSection&) const = default;
};

struct RiskReport {
    std::string model_id;
    std::vector<ReportSection> sections;

    const ReportSection* section(std::string_view predicate) const;
    std::size_t count(std::string_view predicate) const;
    bool operator==(const RiskReport&) const = default;
};

// Sections, in order: coordination needs, coordination risks, cooperation
// risks, free-riding, shirking, sub-goal optimization, then asserted
// strategic substitutes for information. Every S2/S3 fact appears exactly
// once.
RiskReport build_report(const InferenceResult& result);

enum class ReportFormat { Text, Structured };

std::string render_report(const RiskReport& report, ReportFormat format);
std::string render_report(const InferenceResult& result, ReportFormat format);

nlohmann::json report_to_json(const RiskReport& report);
RiskReport report_from_json(const nlohmann::json& doc);

// Inverse of render_report(..., Structured). Throws Error("InvalidReport").
RiskReport parse_structured_report(std::string_view text);

}  // namespace orgrisk
