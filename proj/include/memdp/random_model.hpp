#pragma once

#include "memdp/model.hpp"
#include "memdp/objective.hpp"

#include <cstdint>
#include <random>

namespace memdp {

/// Random valid model: every state enables the same nonempty random action
/// subset in all environments; each environment draws supports of size
/// 1..branching (or reuses the first environment's support) with random
/// positive integer weights. Deterministic in `seed`.
Memdp gen_random(std::size_t num_states, std::size_t num_actions, std::size_t num_envs, std::size_t branching,
                 std::uint64_t seed);

/// Random Rabin objective with `num_pairs` pairs; each B is a random subset and C a random subset of B.
RabinObjective random_rabin(std::size_t num_states, std::size_t num_pairs, std::mt19937_64& rng);

/// Uniformly random subset of states.
StateSet random_state_set(std::size_t num_states, std::mt19937_64& rng);

}  // namespace memdp
