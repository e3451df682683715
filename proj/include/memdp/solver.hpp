#pragma once

#include "memdp/belief.hpp"
#include "memdp/graph.hpp"
#include "memdp/objective.hpp"

#include <unordered_map>

namespace memdp {

/// Removes `x` from a model whose state domains act as beliefs. Every
/// (state, action) whose support touches a removed state in any environment
/// is redirected, in every environment, to a fresh absorbing sink.
Surgery state_remove(const Memdp& m, const StateSet& x);

/// Almost-sure reachability of `target` on a belief-product-shaped model: per
/// environment i, states whose domain contains i and that cannot reach the
/// target almost surely in that environment are removed; repeat until stable.
StateSet bomdp_as_reach(const Memdp& m, const StateSet& target);

/// States winning "always B and infinitely often C". C is intersected with B first.
StateSet safe_buchi_region(const Memdp& m, const StateSet& b, const StateSet& c);

struct LocalRabinResult {
    StateSet region;
    /// Union of the per-pair safe-Büchi regions.
    StateSet win_set;
    std::vector<StateSet> pair_regions;
};

/// `wf` is the set of winning frontier states (local ids). `phi` ranges over
/// the original states and is lifted; `wf` is added to every B and C.
LocalRabinResult local_rabin(const LocalMemdp& l, const StateSet& wf, const RabinObjective& phi);

struct SolverStats {
    std::size_t max_depth = 0;
    std::size_t calls = 0;
    std::size_t distinct_beliefs = 0;
    std::size_t memo_hits = 0;
    /// Largest total size of the local models alive on the recursion stack at once.
    std::size_t peak_resident_states = 0;
    double wall_ms = 0;
};

/// Recursive decision procedure with a memo keyed by belief.
class Checker {
public:
    Checker(const Memdp& m, RabinObjective phi);

    bool solve(const Belief& b);
    const SolverStats& stats() const noexcept { return stats_; }
    const Memdp& model() const noexcept { return m_; }
    const RabinObjective& objective() const noexcept { return phi_; }

private:
    bool solve(const Belief& b, std::size_t depth);

    const Memdp& m_;
    RabinObjective phi_;
    std::unordered_map<Belief, bool, BeliefHash> memo_;
    SolverStats stats_;
    std::size_t resident_ = 0;
};

/// Is the initial belief almost-surely winning?
bool check(const Memdp& m, const RabinObjective& phi, SolverStats* stats = nullptr);

/// Winning beliefs ⟨s, J⟩ for every state s and nonempty J.
struct BeliefRegion {
    std::unordered_map<EnvSet, StateSet, EnvSetHash> by_envs;

    bool contains(const Belief& b) const;
    std::vector<Belief> members() const;
};

/// Exponential in the number of environments; throws Exploded when
/// |S|·(2^|I| - 1) exceeds `cap`.
BeliefRegion winning_region(const Memdp& m, const RabinObjective& phi, std::size_t cap = kDefaultBeliefCap);

/// Positive-probability semantics: every environment wins possibly on its own.
bool possible_check(const Memdp& m, const RabinObjective& phi);

/// Debug mode: per-pair safe-Büchi regions on the explicit belief product
/// followed by almost-sure reachability, without localization. Unsound in
/// general; kept to demonstrate the difference.
bool naive_global_check(const Memdp& m, const RabinObjective& phi, std::size_t cap = kDefaultBeliefCap);

/// Lifts an objective over m's states to the belief product.
RabinObjective lift_to_bomdp(const Bomdp& b, const RabinObjective& phi);

}  // namespace memdp
