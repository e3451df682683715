#pragma once

#include "memdp/graph.hpp"
#include "memdp/model.hpp"
#include "memdp/objective.hpp"

#include <compare>
#include <functional>
#include <unordered_map>
#include <vector>

namespace memdp {

/// A state together with the environments consistent with the history so far.
struct Belief {
    StateId state;
    EnvSet envs;

    bool operator==(const Belief&) const = default;
    std::strong_ordering operator<=>(const Belief& o) const;
};

struct BeliefHash {
    std::size_t operator()(const Belief& b) const noexcept;
};

/// J' = {j ∈ J | p_j(s, a, s') > 0}.
/// Throws DisabledAction if `a` is not enabled at b.state, ImpossibleObservation if J' is empty.
Belief belief_update(const Memdp& m, const Belief& b, ActionId a, StateId next);

/// All beliefs reachable in one step under `a`, sorted.
std::vector<Belief> belief_successors(const Memdp& m, const Belief& b, ActionId a);

/// "s1{1,2}"
std::string belief_label(const Memdp& m, const Belief& b);

/// Explicit belief-observation product, reachable from the initial belief.
/// The model's state k is beliefs[k]; its domain is exactly beliefs[k].envs.
struct Bomdp {
    Memdp model;
    std::vector<Belief> beliefs;
    std::unordered_map<Belief, StateId, BeliefHash> index;

    std::optional<StateId> find(const Belief& b) const;
};

inline constexpr std::size_t kDefaultBeliefCap = 1'000'000;

/// Throws Exploded when more than `cap` beliefs are produced.
Bomdp build_bomdp(const Memdp& m, std::size_t cap = kDefaultBeliefCap);

/// A transition whose observation strictly shrinks the belief.
struct Frontier {
    StateId source;
    ActionId action;
    StateId target;

    bool operator==(const Frontier&) const = default;
    auto operator<=>(const Frontier&) const = default;
};

enum class FrontierScope {
    /// Base states reachable from the initial state without leaving J, and their frontiers.
    FromInitial,
    /// Every state and every revealing triple, as needed for region tables.
    AllStates,
};

/// The J-local model. Local states are the retained base states followed by
/// the frontier states. Local environment k is original environment
/// envs.members()[k]. Frontier states are absorbing through `__loop`.
struct LocalMemdp {
    Memdp model;
    EnvSet envs;
    /// base[k] is the original id of local state k, for k < base.size().
    std::vector<StateId> base;
    std::vector<Frontier> frontiers;
    /// Original state id to local id, for retained base states.
    std::vector<std::optional<StateId>> local_of;

    bool is_frontier(StateId local) const noexcept { return local >= base.size(); }
    const Frontier& frontier_at(StateId local) const { return frontiers.at(local - base.size()); }
    StateId frontier_id(std::size_t k) const noexcept { return base.size() + k; }
    std::vector<EnvId> env_table() const { return envs.members(); }

    /// Local copy of an objective over original states; frontier states belong to no set.
    RabinObjective lift(const RabinObjective& phi) const;
    StateSet lift(const StateSet& set) const;
};

/// Throws EmptyEnvSet when J is empty.
LocalMemdp build_local(const Memdp& m, const EnvSet& envs, FrontierScope scope = FrontierScope::FromInitial);
LocalMemdp build_local(const Memdp& m, const EnvSet& envs, StateId initial,
                       FrontierScope scope = FrontierScope::FromInitial);

/// Frontier states (local ids) reachable from the local initial state.
StateSet reachable_frontier(const LocalMemdp& l);

/// The global belief entered when crossing frontier `f` of a J-local model.
Belief to_glob(const Memdp& m, const EnvSet& envs, const Frontier& f);

/// Frontiers of `rf` whose global image satisfies `winning`.
StateSet win_local(const Memdp& m, const LocalMemdp& l, const StateSet& rf,
                   const std::function<bool(const Belief&)>& winning);

/// Union graph over all environments of a model.
Digraph union_graph(const Memdp& m);

}  // namespace memdp
