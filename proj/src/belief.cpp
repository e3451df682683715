#include "memdp/belief.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace memdp {

std::strong_ordering Belief::operator<=>(const Belief& o) const {
    if (auto c = state <=> o.state; c != 0) return c;
    return envs <=> o.envs;
}

std::size_t BeliefHash::operator()(const Belief& b) const noexcept {
    return b.envs.hash() * 0x9e3779b97f4a7c15ULL ^ std::hash<StateId>{}(b.state);
}

Belief belief_update(const Memdp& m, const Belief& b, ActionId a, StateId next) {
    if (b.envs.empty()) throw Error(Errc::EmptyEnvSet, "belief with no environments");
    EnvSet out(b.envs.universe());
    for (EnvId j : b.envs.members()) {
        const SparseDist* d = m.transition(j, b.state, a);
        if (!d)
            throw Error(Errc::DisabledAction, "action '" + m.action_name(a) + "' is not enabled at '" +
                                                  m.state_name(b.state) + "'");
        if (d->supports(next)) out.insert(j);
    }
    if (out.empty())
        throw Error(Errc::ImpossibleObservation, "no environment of " + env_set_label(m, b.envs) + " moves from '" +
                                                     m.state_name(b.state) + "' to '" + m.state_name(next) +
                                                     "' under '" + m.action_name(a) + "'");
    return Belief{next, std::move(out)};
}

std::vector<Belief> belief_successors(const Memdp& m, const Belief& b, ActionId a) {
    std::set<StateId> targets;
    for (EnvId j : b.envs.members()) {
        const SparseDist* d = m.transition(j, b.state, a);
        if (!d)
            throw Error(Errc::DisabledAction, "action '" + m.action_name(a) + "' is not enabled at '" +
                                                  m.state_name(b.state) + "'");
        for (const auto& e : d->entries()) targets.insert(e.target);
    }
    std::vector<Belief> out;
    for (StateId t : targets) out.push_back(belief_update(m, b, a, t));
    std::sort(out.begin(), out.end());
    return out;
}

std::string belief_label(const Memdp& m, const Belief& b) { return m.state_name(b.state) + env_set_label(m, b.envs); }

std::optional<StateId> Bomdp::find(const Belief& b) const {
    auto it = index.find(b);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

Bomdp build_bomdp(const Memdp& m, std::size_t cap) {
    std::vector<Belief> beliefs;
    std::unordered_map<Belief, StateId, BeliefHash> index;
    auto discover = [&](const Belief& b) {
        auto [it, fresh] = index.emplace(b, beliefs.size());
        if (fresh) {
            if (beliefs.size() >= cap)
                throw Error(Errc::Exploded, "belief product exceeds " + std::to_string(cap) + " states");
            beliefs.push_back(b);
        }
        return it->second;
    };
    discover(Belief{m.initial(), m.all_envs()});

    Memdp::Rows rows(m.num_envs());
    for (StateId k = 0; k < beliefs.size(); ++k) {
        const Belief b = beliefs[k];
        for (auto& r : rows) r.emplace_back();
        for (ActionId a : m.enabled(b.state))
            for (const Belief& next : belief_successors(m, b, a)) discover(next);
        for (EnvId e : b.envs.members()) {
            for (const auto& c : m.choices(e, b.state)) {
                std::vector<Entry> entries;
                for (const auto& entry : c.dist.entries())
                    entries.push_back(Entry{index.at(belief_update(m, b, c.action, entry.target)), entry.prob});
                rows[e][k].push_back(Choice{c.action, SparseDist(std::move(entries))});
            }
        }
    }

    NameTables names = m.names();
    names.states.clear();
    for (const auto& b : beliefs) names.states.push_back(belief_label(m, b));
    return Bomdp{Memdp(std::move(names), 0, std::move(rows)), std::move(beliefs), std::move(index)};
}

RabinObjective LocalMemdp::lift(const RabinObjective& phi) const {
    RabinObjective out;
    for (const auto& p : phi.pairs) out.pairs.push_back(RabinPair{lift(p.b), lift(p.c)});
    return out;
}

StateSet LocalMemdp::lift(const StateSet& set) const {
    StateSet out(model.num_states());
    for (StateId k = 0; k < base.size(); ++k)
        if (set.test(base[k])) out.set(k);
    return out;
}

LocalMemdp build_local(const Memdp& m, const EnvSet& envs, FrontierScope scope) {
    return build_local(m, envs, m.initial(), scope);
}

LocalMemdp build_local(const Memdp& m, const EnvSet& envs, StateId initial, FrontierScope scope) {
    if (envs.empty()) throw Error(Errc::EmptyEnvSet, "local model over an empty environment set");
    if (envs.universe() != m.num_envs()) throw Error(Errc::EmptyEnvSet, "environment set does not match the model");
    if (initial >= m.num_states()) throw Error(Errc::UnknownState, "initial state out of range");
    const auto table = envs.members();
    const std::size_t n = m.num_states();

    auto revealing = [&](StateId s, ActionId a, StateId t) {
        for (EnvId j : table)
            if (!m.transition(j, s, a)->supports(t)) return true;
        return false;
    };
    // Union over J of the targets of (s, a).
    auto targets = [&](StateId s, ActionId a) {
        std::set<StateId> out;
        for (EnvId j : table) {
            const SparseDist* d = m.transition(j, s, a);
            if (!d)
                throw Error(Errc::DisabledAction, "action '" + m.action_name(a) + "' is not enabled at '" +
                                                      m.state_name(s) + "' in every environment");
            for (const auto& e : d->entries()) out.insert(e.target);
        }
        return out;
    };

    StateSet keep(n);
    if (scope == FrontierScope::AllStates) {
        keep.set();
    } else {
        std::vector<StateId> work{initial};
        keep.set(initial);
        while (!work.empty()) {
            const StateId s = work.back();
            work.pop_back();
            for (ActionId a : m.enabled(s))
                for (StateId t : targets(s, a))
                    if (!keep.test(t) && !revealing(s, a, t)) {
                        keep.set(t);
                        work.push_back(t);
                    }
        }
    }

    std::vector<StateId> base;
    std::vector<std::optional<StateId>> local_of(n);
    for (StateId s = 0; s < n; ++s)
        if (keep.test(s)) {
            local_of[s] = base.size();
            base.push_back(s);
        }
    std::vector<Frontier> frontiers;
    std::map<Frontier, std::size_t> frontier_index;
    for (StateId s : base)
        for (ActionId a : m.enabled(s))
            for (StateId t : targets(s, a))
                if (revealing(s, a, t)) {
                    frontier_index.emplace(Frontier{s, a, t}, frontiers.size());
                    frontiers.push_back(Frontier{s, a, t});
                }
    const auto frontier_id = [&](const Frontier& f) { return base.size() + frontier_index.at(f); };

    NameTables names;
    names.model = m.names().model;
    for (StateId s : base) names.states.push_back(m.state_name(s));
    for (const auto& f : frontiers)
        names.states.push_back("<" + m.state_name(f.source) + "," + m.action_name(f.action) + "," +
                               m.state_name(f.target) + ">");
    names.actions = m.names().actions;
    const ActionId loop = ensure_loop_action(names);
    for (EnvId j : table) names.envs.push_back(m.env_name(j));

    const std::size_t total = base.size() + frontiers.size();
    Memdp::Rows rows(table.size(), std::vector<std::vector<Choice>>(total));
    for (std::size_t k = 0; k < table.size(); ++k) {
        const EnvId j = table[k];
        for (StateId ls = 0; ls < base.size(); ++ls) {
            const StateId s = base[ls];
            for (const auto& c : m.choices(j, s)) {
                std::vector<Entry> entries;
                for (const auto& e : c.dist.entries()) {
                    const StateId to = revealing(s, c.action, e.target) ? frontier_id(Frontier{s, c.action, e.target})
                                                                        : *local_of[e.target];
                    entries.push_back(Entry{to, e.prob});
                }
                rows[k][ls].push_back(Choice{c.action, SparseDist(std::move(entries))});
            }
        }
        for (StateId f = base.size(); f < total; ++f) rows[k][f].push_back(Choice{loop, SparseDist::dirac(f)});
    }
    Memdp model(std::move(names), *local_of[initial], std::move(rows));
    return LocalMemdp{std::move(model), envs, std::move(base), std::move(frontiers), std::move(local_of)};
}

Digraph union_graph(const Memdp& m) {
    Digraph g;
    g.succ.resize(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s) {
        std::set<StateId> next;
        for (EnvId e : m.domain(s).members())
            for (const auto& c : m.choices(e, s))
                for (const auto& entry : c.dist.entries()) next.insert(entry.target);
        g.succ[s].assign(next.begin(), next.end());
    }
    return g;
}

StateSet reachable_frontier(const LocalMemdp& l) {
    StateSet start(l.model.num_states());
    start.set(l.model.initial());
    StateSet out = reachable_from(union_graph(l.model), start);
    for (StateId s = 0; s < l.base.size(); ++s) out.reset(s);
    return out;
}

Belief to_glob(const Memdp& m, const EnvSet& envs, const Frontier& f) {
    return belief_update(m, Belief{f.source, envs}, f.action, f.target);
}

StateSet win_local(const Memdp& m, const LocalMemdp& l, const StateSet& rf,
                   const std::function<bool(const Belief&)>& winning) {
    StateSet out(l.model.num_states());
    for (auto s = rf.find_first(); s != StateSet::npos; s = rf.find_next(s))
        if (l.is_frontier(s) && winning(to_glob(m, l.envs, l.frontier_at(s)))) out.set(s);
    return out;
}

}  // namespace memdp
