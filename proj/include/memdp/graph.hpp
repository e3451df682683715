#pragma once

#include "memdp/model.hpp"
#include "memdp/objective.hpp"

#include <optional>
#include <vector>

namespace memdp {

struct Digraph {
    std::vector<std::vector<std::size_t>> succ;

    std::size_t size() const noexcept { return succ.size(); }
};

/// Strongly connected components, listed in reverse topological order: an edge
/// leaving component k always enters a component with a smaller index.
struct SccDecomposition {
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;
    std::vector<bool> bottom;
};

SccDecomposition scc_decompose(const Digraph& g);

StateSet reachable_from(const Digraph& g, const StateSet& sources);

/// Qualitative skeleton of one environment: per state, the enabled actions and their supports.
struct ActionSupport {
    ActionId action;
    std::vector<StateId> targets;
};

struct Mdp {
    StateId initial = 0;
    std::vector<std::vector<ActionSupport>> choices;

    std::size_t num_states() const noexcept { return choices.size(); }
};

/// States outside the domain of `env` get no choices.
Mdp environment_mdp(const Memdp& m, EnvId env);

struct Mc {
    StateId initial = 0;
    Digraph graph;
};

/// Bottom SCCs reachable from the chain's initial state.
std::vector<std::vector<StateId>> mc_bsccs(const Mc& c);

/// Every reachable BSCC satisfies some pair (BSCC ⊆ B and BSCC ∩ C ≠ ∅).
bool mc_as_rabin_holds(const Mc& c, const RabinObjective& phi);

/// States from which some strategy reaches `target` with probability one.
StateSet mdp_as_reach(const Mdp& m, const StateSet& target);

struct EndComponent {
    std::vector<StateId> states;
    /// actions[k] is the retained action subset of states[k].
    std::vector<std::vector<ActionId>> actions;
};

std::vector<EndComponent> mec_decompose(const Mdp& m);
/// Maximal end components of the sub-MDP that never leaves `within`.
std::vector<EndComponent> mec_decompose(const Mdp& m, const StateSet& within);

struct MemorylessStrategy {
    std::vector<std::optional<ActionId>> choice;
};

struct MdpRabinResult {
    StateSet region;
    MemorylessStrategy strategy;
};

/// Almost-sure Rabin region with a memoryless deterministic witness defined on the region.
MdpRabinResult mdp_as_rabin(const Mdp& m, const RabinObjective& phi);

/// States that reach, with positive probability, an end component inside some B_i meeting C_i.
StateSet mdp_possible_rabin(const Mdp& m, const RabinObjective& phi);

/// Induced chain of a memoryless deterministic strategy; states without a choice self-loop.
Mc apply_strategy(const Mdp& m, const MemorylessStrategy& strategy);

/// Result of surgery that appends one fresh state.
struct Surgery {
    Memdp model;
    /// image[s] is the id of old state s in the new model, if it survived.
    std::vector<std::optional<StateId>> image;
    StateId added;
};

/// Keeps the states in `keep`; probability leaving them is summed into a fresh absorbing sink.
Surgery state_restrict(const Memdp& m, const StateSet& keep);

/// Halves every transition entering `c`, sending the removed half to a fresh absorbing ⊤.
Surgery buchi_to_reach(const Memdp& m, const StateSet& c);

}  // namespace memdp
