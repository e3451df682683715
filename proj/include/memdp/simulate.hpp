#pragma once

#include "memdp/belief.hpp"
#include "memdp/strategy.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace memdp {

struct TraceStep {
    StateId state;
    EnvSet belief;
    /// Action played from this state; empty on the last step.
    std::optional<ActionId> action;

    bool operator==(const TraceStep&) const = default;
};

struct Trace {
    std::uint64_t seed = 0;
    EnvId env = 0;
    std::vector<TraceStep> steps;

    bool operator==(const Trace&) const = default;
};

/// Samples `steps` transitions of environment `env` under `f`.
/// Sampling only uses raw 64-bit engine output, so traces are identical across platforms.
Trace simulate(const Memdp& m, const Fsc& f, EnvId env, std::size_t steps, std::uint64_t seed);

std::string format_trace(const Trace& t, const Memdp& m);

/// Uniform index below `n` from the engine, by rejection.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n);

/// Samples a target exactly: a uniform 64-bit fraction is compared against the
/// cumulative rational weights.
StateId draw_target(std::mt19937_64& rng, const SparseDist& d);

}  // namespace memdp
