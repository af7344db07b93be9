#pragma once

// Small stratified Datalog evaluator with provenance.
//
// Rules are function-free Horn clauses with negated literals and two
// built-in comparisons. Evaluation order is computed from the predicate
// dependency graph: strongly connected components are evaluated bottom-up,
// each with semi-naive iteration, and a negated literal may only refer to a
// predicate that lives in an earlier component. Every rule instantiation that
// produces a fact is recorded as a Derivation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orgrisk/errors.hpp"
#include "orgrisk/fact.hpp"

namespace orgrisk::datalog {

struct Term {
    bool is_variable = false;
    std::string text;
    bool operator==(const Term&) const = default;
};

// Variables conventionally start with an upper-case letter; constants are ids.
inline Term var(std::string name) { return {true, std::move(name)}; }
inline Term constant(std::string value) { return {false, std::move(value)}; }

struct Atom {
    std::string predicate;
    std::vector<Term> terms;
};

enum class Comparison { NotEqual, Less };

struct Literal {
    enum class Kind { Positive, Negative, Builtin } kind = Kind::Positive;
    Atom atom;                              // Positive, Negative
    Comparison comparison = Comparison::NotEqual;  // Builtin
    Term lhs, rhs;                          // Builtin
};

Literal pos(std::string predicate, std::vector<Term> terms);
Literal neg(std::string predicate, std::vector<Term> terms);
Literal not_equal(Term a, Term b);
// Lexicographic order of the bound ids.
Literal less(Term a, Term b);

struct Rule {
    std::string name;
    Stratum stratum = Stratum::S0;
    Atom head;
    std::vector<Literal> body;
    // Sort the first two head arguments, for relations stored as unordered
    // pairs.
    bool canonical_pair = false;
};

class RuleError : public Error {
public:
    using Error::Error;
};

class Program {
public:
    // Declare an input (extensional) predicate. Undeclared body predicates
    // that no rule derives are treated as empty inputs.
    void declare_input(const std::string& predicate, std::size_t arity);

    // Throws RuleError (code "InvalidRule") on arity mismatch or an unsafe
    // variable (a head, negated or built-in variable not bound by a positive
    // body literal).
    void add_rule(Rule rule);

    const std::vector<Rule>& rules() const { return rules_; }
    std::optional<std::size_t> arity(const std::string& predicate) const;

    // Stratum label of a predicate: S0 for inputs, else the label of the
    // rules deriving it (the highest, if several).
    Stratum label(const std::string& predicate) const;

    bool derives(const std::string& predicate) const;

private:
    void note_arity(const std::string& predicate, std::size_t arity, const std::string& rule);

    std::vector<Rule> rules_;
    std::map<std::string, std::size_t> arity_;
    std::map<std::string, Stratum> label_;
};

struct Fixpoint {
    // Every fact (input and derived) with the label of its predicate.
    std::map<Fact, Stratum> facts;
    // All recorded derivations per fact, sorted. Input facts carry an
    // "asserted" derivation. For a derived fact, every premise was derived
    // strictly before the fact first appeared, so derivations never form a
    // cycle through derived facts.
    std::map<Fact, std::vector<Derivation>> derivations;
};

// Runs `program` to fixpoint over `inputs`. Throws RuleError (code
// "Unstratifiable") if negation occurs inside a recursive component.
Fixpoint evaluate(const Program& program, const std::vector<Fact>& inputs);

}  // namespace orgrisk::datalog
