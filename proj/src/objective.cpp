#include "memdp/objective.hpp"

#include <algorithm>

namespace memdp {

void check_rabin(const RabinObjective& phi, std::size_t num_states) {
    for (std::size_t i = 0; i < phi.pairs.size(); ++i) {
        const auto& p = phi.pairs[i];
        if (p.b.size() != num_states || p.c.size() != num_states)
            throw Error(Errc::BadRabinPair, "pair " + std::to_string(i + 1) + " is not over the model's states");
        if (!p.c.is_subset_of(p.b))
            throw Error(Errc::BadRabinPair, "pair " + std::to_string(i + 1) + " violates C ⊆ B");
    }
}

namespace {

void check_size(const StateSet& set, const Memdp& m) {
    if (set.size() != m.num_states()) throw Error(Errc::UnknownState, "objective refers to states outside the model");
}

CompiledObjective compile_reach(const Reach& r, const Memdp& m) {
    check_size(r.target, m);
    NameTables names = m.names();
    const ActionId loop = ensure_loop_action(names);
    Memdp::Rows rows = m.rows();
    for (auto& env_rows : rows)
        for (StateId s = 0; s < m.num_states(); ++s)
            if (r.target.test(s) && !env_rows[s].empty())
                env_rows[s] = {Choice{loop, SparseDist::dirac(s)}};
    const std::size_t n = m.num_states();
    StateSet all(n);
    all.set();
    return {Memdp(std::move(names), m.initial(), std::move(rows)), RabinObjective{{RabinPair{all, r.target}}}};
}

CompiledObjective compile_safety(const Safety& sf, const Memdp& m) {
    check_size(sf.safe, m);
    NameTables names = m.names();
    const std::size_t n = m.num_states();
    const StateId bot = n;
    names.states.push_back(fresh_name(names.states, "__bot"));
    const ActionId loop = ensure_loop_action(names);
    Memdp::Rows rows(m.num_envs(), std::vector<std::vector<Choice>>(n + 1));
    for (EnvId e = 0; e < m.num_envs(); ++e) {
        for (StateId s = 0; s < n; ++s) {
            for (const auto& c : m.choices(e, s)) {
                if (!sf.safe.test(s)) {
                    rows[e][s].push_back(Choice{c.action, SparseDist::dirac(bot)});
                    continue;
                }
                std::vector<Entry> kept;
                Rational leaving = 0;
                for (const auto& entry : c.dist.entries()) {
                    if (sf.safe.test(entry.target))
                        kept.push_back(entry);
                    else
                        leaving += entry.prob;
                }
                if (leaving > 0) kept.push_back(Entry{bot, leaving});
                rows[e][s].push_back(Choice{c.action, SparseDist(std::move(kept))});
            }
        }
        rows[e][bot].push_back(Choice{loop, SparseDist::dirac(bot)});
    }
    StateSet good(n + 1);
    good.set();
    good.reset(bot);
    return {Memdp(std::move(names), m.initial(), std::move(rows)), RabinObjective{{RabinPair{good, good}}}};
}

RabinObjective compile_parity(const Parity& p, const Memdp& m) {
    const std::size_t n = m.num_states();
    if (p.priority.size() != n) throw Error(Errc::UnknownState, "parity priorities do not cover the model's states");
    const unsigned top = p.priority.empty() ? 0 : *std::max_element(p.priority.begin(), p.priority.end());
    RabinObjective phi;
    for (unsigned even = 0; even <= top; even += 2) {
        RabinPair pair{StateSet(n), StateSet(n)};
        for (StateId s = 0; s < n; ++s) {
            if (p.priority[s] <= even) pair.b.set(s);
            if (p.priority[s] == even) pair.c.set(s);
        }
        phi.pairs.push_back(std::move(pair));
    }
    return phi;
}

}  // namespace

CompiledObjective objective_to_rabin(const ObjectiveSpec& spec, const Memdp& m) {
    const std::size_t n = m.num_states();
    StateSet all(n);
    all.set();
    return std::visit(
        [&](const auto& obj) -> CompiledObjective {
            using T = std::decay_t<decltype(obj)>;
            if constexpr (std::is_same_v<T, Reach>) {
                return compile_reach(obj, m);
            } else if constexpr (std::is_same_v<T, Safety>) {
                return compile_safety(obj, m);
            } else if constexpr (std::is_same_v<T, Buchi>) {
                check_size(obj.target, m);
                return {m, RabinObjective{{RabinPair{all, obj.target}}}};
            } else if constexpr (std::is_same_v<T, CoBuchi>) {
                check_size(obj.target, m);
                return {m, RabinObjective{{RabinPair{obj.target, obj.target}}}};
            } else if constexpr (std::is_same_v<T, Parity>) {
                return {m, compile_parity(obj, m)};
            } else {
                check_rabin(obj.objective, n);
                return {m, obj.objective};
            }
        },
        spec);
}

}  // namespace memdp
