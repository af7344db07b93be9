#pragma once

// Brute-force reference for the dependence and risk rules: every predicate
// is computed by enumerating all candidate tuples over the model directly,
// without the Datalog engine.

#include <set>

#include "orgrisk/fact.hpp"
#include "orgrisk/model.hpp"

namespace orgrisk::testing {

// All S1-S3 facts of `model`.
std::set<Fact> oracle_facts(const OrgModel& model);

}  // namespace orgrisk::testing
