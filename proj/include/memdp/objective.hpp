#pragma once

#include "memdp/model.hpp"

#include <variant>
#include <vector>

namespace memdp {

/// A run wins the pair when it eventually stays inside `b` and visits `c` infinitely often.
struct RabinPair {
    StateSet b;
    StateSet c;

    bool operator==(const RabinPair&) const = default;
};

struct RabinObjective {
    std::vector<RabinPair> pairs;

    bool operator==(const RabinObjective&) const = default;
};

/// Throws BadRabinPair unless every pair satisfies C ⊆ B over `num_states` states.
void check_rabin(const RabinObjective& phi, std::size_t num_states);

struct Reach { StateSet target; };
struct Safety { StateSet safe; };
struct Buchi { StateSet target; };
struct CoBuchi { StateSet target; };
/// Priority per state; a run wins when the largest priority seen infinitely often is even.
struct Parity { std::vector<unsigned> priority; };
struct Rabin { RabinObjective objective; };

using ObjectiveSpec = std::variant<Reach, Safety, Buchi, CoBuchi, Parity, Rabin>;

struct CompiledObjective {
    Memdp model;
    RabinObjective rabin;
};

/// Rewrites any supported objective into a Rabin objective, possibly on a
/// transformed model. A strategy wins the result iff it wins `spec` on `m`.
///
/// - Reach(T): states of T become absorbing through a single `__loop` action; pair (S, T).
/// - Safety(T): mass leaving T goes to a fresh absorbing `__bot`, states outside
///   T move there in one step; pair (S∖{⊥}, S∖{⊥}).
/// - Buchi(T): pair (S, T).  CoBuchi(T): pair (T, T).
/// - Parity(l): one pair per even priority 2k ≤ max l: ({l ≤ 2k}, {l = 2k}).
/// - Rabin: identity.
CompiledObjective objective_to_rabin(const ObjectiveSpec& spec, const Memdp& m);

}  // namespace memdp
