#include "memdp/random_model.hpp"

#include "memdp/simulate.hpp"

#include <algorithm>
#include <numeric>

namespace memdp {

namespace {

std::vector<StateId> random_support(std::size_t n, std::size_t branching, std::mt19937_64& rng) {
    const std::size_t size = 1 + draw_index(rng, std::min(branching, n));
    std::vector<StateId> all(n);
    std::iota(all.begin(), all.end(), 0);
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + draw_index(rng, n - i)]);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

SparseDist random_dist(const std::vector<StateId>& support, std::mt19937_64& rng) {
    std::vector<long long> weights;
    long long total = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        weights.push_back(1 + static_cast<long long>(draw_index(rng, 4)));
        total += weights.back();
    }
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < support.size(); ++i) entries.push_back(Entry{support[i], Rational(weights[i], total)});
    return SparseDist(std::move(entries));
}

}  // namespace

Memdp gen_random(std::size_t num_states, std::size_t num_actions, std::size_t num_envs, std::size_t branching,
                 std::uint64_t seed) {
    if (num_states == 0 || num_actions == 0 || num_envs == 0 || branching == 0)
        throw Error(Errc::EmptyEnvSet, "random model sizes must be positive");
    std::mt19937_64 rng(seed);
    NameTables names;
    names.model = "random" + std::to_string(seed);
    for (std::size_t s = 0; s < num_states; ++s) names.states.push_back("s" + std::to_string(s));
    for (std::size_t a = 0; a < num_actions; ++a) names.actions.push_back("a" + std::to_string(a));
    for (std::size_t e = 0; e < num_envs; ++e) names.envs.push_back(std::to_string(e + 1));

    Memdp::Rows rows(num_envs, std::vector<std::vector<Choice>>(num_states));
    for (StateId s = 0; s < num_states; ++s) {
        std::vector<ActionId> enabled;
        while (enabled.empty())
            for (ActionId a = 0; a < num_actions; ++a)
                if (draw_index(rng, 2)) enabled.push_back(a);
        for (ActionId a : enabled) {
            const auto shared = random_support(num_states, branching, rng);
            for (EnvId e = 0; e < num_envs; ++e) {
                const auto support = e == 0 || draw_index(rng, 2) ? shared : random_support(num_states, branching, rng);
                rows[e][s].push_back(Choice{a, random_dist(support, rng)});
            }
        }
    }
    return Memdp(std::move(names), 0, std::move(rows));
}

StateSet random_state_set(std::size_t num_states, std::mt19937_64& rng) {
    StateSet set(num_states);
    for (StateId s = 0; s < num_states; ++s)
        if (draw_index(rng, 2)) set.set(s);
    return set;
}

RabinObjective random_rabin(std::size_t num_states, std::size_t num_pairs, std::mt19937_64& rng) {
    RabinObjective phi;
    for (std::size_t k = 0; k < num_pairs; ++k) {
        StateSet b = random_state_set(num_states, rng);
        StateSet c = random_state_set(num_states, rng) & b;
        phi.pairs.push_back(RabinPair{std::move(b), std::move(c)});
    }
    return phi;
}

}  // namespace memdp
