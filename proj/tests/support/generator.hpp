#pragma once

// Seeded generator of small valid models (at most 6 agents, 8 activities,
// 6 evaluations, 8 states, 10 relations).

#include <cstdint>
#include <optional>
#include <random>

#include "orgrisk/model.hpp"
#include "orgrisk/whatif.hpp"

namespace orgrisk::testing {

struct Bounds {
    int agents = 6;
    int activities = 8;
    int evaluations = 6;
    int states = 8;
    int relations = 10;
};

// A valid model for `seed`; seeds whose draw cannot be repaired into a
// valid model are skipped deterministically (seed, seed + 1, ...).
OrgModel random_model(std::uint64_t seed, const Bounds& bounds = {});

bool within(const OrgModel& m, const Bounds& bounds = {});

// One addition (evaluation, mechanism, incentive, dependence or membership)
// that keeps `m` valid, or nullopt if none was found.
std::optional<Intervention> random_addition(const OrgModel& m, std::mt19937_64& rng);

}  // namespace orgrisk::testing
