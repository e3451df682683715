#pragma once

#include "memdp/belief.hpp"
#include "memdp/graph.hpp"
#include "memdp/objective.hpp"

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace memdp {

/// Finite-state controller whose memory nodes are environment sets.
/// At (node, state) it plays uniformly over an action subset; after observing
/// (state, action, next) it moves to a new node.
struct Fsc {
    using ActKey = std::pair<std::size_t, StateId>;
    using UpdateKey = std::tuple<std::size_t, StateId, ActionId, StateId>;

    std::size_t num_envs = 0;
    std::vector<EnvSet> nodes;
    std::size_t initial_node = 0;
    std::map<ActKey, std::vector<ActionId>> act;
    std::map<UpdateKey, std::size_t> update;

    const std::vector<ActionId>* actions(std::size_t node, StateId s) const;
    std::optional<std::size_t> next(std::size_t node, StateId s, ActionId a, StateId t) const;
    std::optional<std::size_t> node_of(const EnvSet& envs) const;

    bool operator==(const Fsc&) const = default;
};

/// Actions at b whose every successor belief satisfies `winning`.
std::vector<ActionId> allowed_actions(const Memdp& m, const Belief& b,
                                      const std::function<bool(const Belief&)>& winning);

/// A controller winning in every environment. Throws NotWinning when the
/// initial belief is losing.
Fsc synthesize(const Memdp& m, const RabinObjective& phi);

/// Product of one environment with a controller, over reachable (state, node) pairs.
struct InducedMc {
    EnvId env = 0;
    std::vector<std::pair<StateId, std::size_t>> states;
    std::vector<SparseDist> rows;

    Mc chain() const;
};

/// One chain per environment. Throws UncoveredBelief when a reachable pair has
/// no action or a reachable observation has no memory update.
std::vector<InducedMc> fsc_product(const Memdp& m, const Fsc& f);

/// Every environment's induced chain satisfies the objective almost surely.
bool verify_fsc(const Memdp& m, const Fsc& f, const RabinObjective& phi);

struct OracleCaps {
    std::size_t max_beliefs = 10'000;
    std::size_t max_strategies = 10'000'000;
};

struct OracleResult {
    bool winning = false;
    /// Belief product the search ran on.
    std::optional<Bomdp> bomdp;
    /// Per belief-product state, the action subset of the first winning strategy found.
    std::vector<std::optional<std::vector<ActionId>>> witness;
    std::size_t evaluated = 0;
};

/// Exhaustive search over uniform-over-subset strategies on the explicit belief
/// product. Only states reachable under the partial assignment are assigned.
/// Throws Exploded past the caps.
OracleResult brute_force_check(const Memdp& m, const RabinObjective& phi, const OracleCaps& caps = {});

}  // namespace memdp
