#include "memdp/graph.hpp"

#include <algorithm>
#include <limits>

namespace memdp {

namespace {

constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

bool all_in(const std::vector<StateId>& targets, const StateSet& set) {
    return std::all_of(targets.begin(), targets.end(), [&](StateId t) { return set.test(t); });
}

bool any_in(const std::vector<StateId>& targets, const StateSet& set) {
    return std::any_of(targets.begin(), targets.end(), [&](StateId t) { return set.test(t); });
}

}  // namespace

SccDecomposition scc_decompose(const Digraph& g) {
    const std::size_t n = g.size();
    SccDecomposition out;
    out.component_of.assign(n, kUnvisited);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    // (vertex, next successor position)
    std::vector<std::pair<std::size_t, std::size_t>> calls;
    std::size_t counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        calls.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!calls.empty()) {
            auto& [v, pos] = calls.back();
            if (pos < g.succ[v].size()) {
                const std::size_t w = g.succ[v][pos++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    calls.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            calls.pop_back();
            if (!calls.empty()) {
                const std::size_t parent = calls.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component_of[w] = out.components.size();
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                out.components.push_back(std::move(comp));
            }
        }
    }

    out.bottom.assign(out.components.size(), true);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w : g.succ[v])
            if (out.component_of[w] != out.component_of[v]) out.bottom[out.component_of[v]] = false;
    return out;
}

StateSet reachable_from(const Digraph& g, const StateSet& sources) {
    StateSet seen = sources;
    std::vector<std::size_t> work;
    for (auto v = seen.find_first(); v != StateSet::npos; v = seen.find_next(v)) work.push_back(v);
    while (!work.empty()) {
        const std::size_t v = work.back();
        work.pop_back();
        for (std::size_t w : g.succ[v])
            if (!seen.test(w)) {
                seen.set(w);
                work.push_back(w);
            }
    }
    return seen;
}

Mdp environment_mdp(const Memdp& m, EnvId env) {
    Mdp out;
    out.initial = m.initial();
    out.choices.resize(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s)
        for (const auto& c : m.choices(env, s)) out.choices[s].push_back(ActionSupport{c.action, c.dist.support()});
    return out;
}

std::vector<std::vector<StateId>> mc_bsccs(const Mc& c) {
    const auto scc = scc_decompose(c.graph);
    StateSet start(c.graph.size());
    start.set(c.initial);
    const StateSet reach = reachable_from(c.graph, start);
    std::vector<std::vector<StateId>> out;
    for (std::size_t k = 0; k < scc.components.size(); ++k)
        if (scc.bottom[k] && reach.test(scc.components[k].front())) out.push_back(scc.components[k]);
    std::sort(out.begin(), out.end());
    return out;
}

bool mc_as_rabin_holds(const Mc& c, const RabinObjective& phi) {
    for (const auto& bscc : mc_bsccs(c)) {
        const bool ok = std::any_of(phi.pairs.begin(), phi.pairs.end(), [&](const RabinPair& p) {
            return all_in(bscc, p.b) && any_in(bscc, p.c);
        });
        if (!ok) return false;
    }
    return true;
}

StateSet mdp_as_reach(const Mdp& m, const StateSet& target) {
    const std::size_t n = m.num_states();
    StateSet win(n);
    win.set();
    for (;;) {
        // States that reach `target` with positive probability while never leaving `win`.
        StateSet reach = target & win;
        for (bool grew = true; grew;) {
            grew = false;
            for (StateId s = 0; s < n; ++s) {
                if (reach.test(s) || !win.test(s)) continue;
                for (const auto& a : m.choices[s])
                    if (all_in(a.targets, win) && any_in(a.targets, reach)) {
                        reach.set(s);
                        grew = true;
                        break;
                    }
            }
        }
        if (reach == win) return win;
        win = reach;
    }
}

std::vector<EndComponent> mec_decompose(const Mdp& m) {
    StateSet all(m.num_states());
    all.set();
    return mec_decompose(m, all);
}

std::vector<EndComponent> mec_decompose(const Mdp& m, const StateSet& within) {
    const std::size_t n = m.num_states();
    StateSet active = within;
    // Indices into m.choices[s] that are still retained.
    std::vector<std::vector<std::size_t>> kept(n);
    for (StateId s = 0; s < n; ++s)
        if (active.test(s))
            for (std::size_t k = 0; k < m.choices[s].size(); ++k) kept[s].push_back(k);

    SccDecomposition scc;
    for (;;) {
        bool changed = false;
        for (bool pruned = true; pruned;) {
            pruned = false;
            for (StateId s = 0; s < n; ++s) {
                if (!active.test(s)) continue;
                auto& ks = kept[s];
                const auto before = ks.size();
                ks.erase(std::remove_if(ks.begin(), ks.end(),
                                        [&](std::size_t k) { return !all_in(m.choices[s][k].targets, active); }),
                         ks.end());
                if (ks.size() != before) pruned = changed = true;
                if (ks.empty()) {
                    active.reset(s);
                    pruned = changed = true;
                }
            }
        }
        Digraph g;
        g.succ.resize(n);
        for (StateId s = 0; s < n; ++s)
            for (std::size_t k : kept[s])
                for (StateId t : m.choices[s][k].targets) g.succ[s].push_back(t);
        scc = scc_decompose(g);
        for (StateId s = 0; s < n; ++s) {
            auto& ks = kept[s];
            const auto before = ks.size();
            ks.erase(std::remove_if(ks.begin(), ks.end(),
                                    [&](std::size_t k) {
                                        const auto& ts = m.choices[s][k].targets;
                                        return std::any_of(ts.begin(), ts.end(), [&](StateId t) {
                                            return scc.component_of[t] != scc.component_of[s];
                                        });
                                    }),
                     ks.end());
            if (ks.size() != before) changed = true;
        }
        if (!changed) break;
    }

    std::vector<EndComponent> out;
    for (const auto& comp : scc.components) {
        if (!active.test(comp.front())) continue;
        EndComponent ec;
        for (StateId s : comp) {
            ec.states.push_back(s);
            std::vector<ActionId> acts;
            for (std::size_t k : kept[s]) acts.push_back(m.choices[s][k].action);
            ec.actions.push_back(std::move(acts));
        }
        out.push_back(std::move(ec));
    }
    std::sort(out.begin(), out.end(),
              [](const EndComponent& a, const EndComponent& b) { return a.states.front() < b.states.front(); });
    return out;
}

namespace {

const ActionSupport* find_choice(const Mdp& m, StateId s, ActionId a) {
    for (const auto& c : m.choices[s])
        if (c.action == a) return &c;
    return nullptr;
}

// Inside an end component, a layered attractor toward `anchor` using only retained actions.
void attract_inside(const Mdp& m, const EndComponent& ec, StateId anchor, MemorylessStrategy& strategy,
                    std::vector<bool>& assigned) {
    const std::size_t n = m.num_states();
    StateSet layer(n);
    layer.set(anchor);
    std::size_t pos = std::find(ec.states.begin(), ec.states.end(), anchor) - ec.states.begin();
    if (!assigned[anchor]) {
        strategy.choice[anchor] = ec.actions[pos].front();
        assigned[anchor] = true;
    }
    for (std::size_t covered = 1; covered < ec.states.size();) {
        StateSet next = layer;
        for (std::size_t k = 0; k < ec.states.size(); ++k) {
            const StateId s = ec.states[k];
            if (layer.test(s)) continue;
            for (ActionId a : ec.actions[k])
                if (any_in(find_choice(m, s, a)->targets, layer)) {
                    next.set(s);
                    ++covered;
                    if (!assigned[s]) {
                        strategy.choice[s] = a;
                        assigned[s] = true;
                    }
                    break;
                }
        }
        if (next == layer) break;  // unreachable for a genuine end component
        layer = std::move(next);
    }
}

std::vector<EndComponent> accepting_mecs(const Mdp& m, const RabinPair& p) {
    auto mecs = mec_decompose(m, p.b);
    std::erase_if(mecs, [&](const EndComponent& ec) { return !any_in(ec.states, p.c); });
    return mecs;
}

}  // namespace

MdpRabinResult mdp_as_rabin(const Mdp& m, const RabinObjective& phi) {
    const std::size_t n = m.num_states();
    MdpRabinResult out{StateSet(n), MemorylessStrategy{std::vector<std::optional<ActionId>>(n)}};
    std::vector<bool> assigned(n, false);
    StateSet good(n);
    for (const auto& pair : phi.pairs) {
        for (const auto& ec : accepting_mecs(m, pair)) {
            StateId anchor = n;
            for (StateId s : ec.states)
                if (pair.c.test(s)) {
                    anchor = s;
                    break;
                }
            attract_inside(m, ec, anchor, out.strategy, assigned);
            for (StateId s : ec.states) good.set(s);
        }
    }
    out.region = mdp_as_reach(m, good);

    StateSet layer = good;
    for (bool grew = true; grew;) {
        grew = false;
        StateSet next = layer;
        for (StateId s = 0; s < n; ++s) {
            if (layer.test(s) || !out.region.test(s)) continue;
            for (const auto& c : m.choices[s])
                if (all_in(c.targets, out.region) && any_in(c.targets, layer)) {
                    next.set(s);
                    out.strategy.choice[s] = c.action;
                    grew = true;
                    break;
                }
        }
        layer = std::move(next);
    }
    for (StateId s = 0; s < n; ++s)
        if (!out.region.test(s)) out.strategy.choice[s].reset();
    return out;
}

StateSet mdp_possible_rabin(const Mdp& m, const RabinObjective& phi) {
    const std::size_t n = m.num_states();
    StateSet good(n);
    for (const auto& pair : phi.pairs)
        for (const auto& ec : accepting_mecs(m, pair))
            for (StateId s : ec.states) good.set(s);
    Digraph back;
    back.succ.resize(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& c : m.choices[s])
            for (StateId t : c.targets) back.succ[t].push_back(s);
    return reachable_from(back, good);
}

Mc apply_strategy(const Mdp& m, const MemorylessStrategy& strategy) {
    Mc out;
    out.initial = m.initial;
    out.graph.succ.resize(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s) {
        const ActionSupport* c = nullptr;
        if (s < strategy.choice.size() && strategy.choice[s]) c = find_choice(m, s, *strategy.choice[s]);
        if (c)
            out.graph.succ[s] = c->targets;
        else
            out.graph.succ[s] = {s};
    }
    return out;
}

Surgery state_restrict(const Memdp& m, const StateSet& keep) {
    if (keep.size() != m.num_states()) throw Error(Errc::UnknownState, "restriction set does not match the model");
    if (keep.none()) throw Error(Errc::EmptyRestriction, "cannot restrict to an empty state set");
    NameTables names = m.names();
    names.states.clear();
    std::vector<std::optional<StateId>> image(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s)
        if (keep.test(s)) {
            image[s] = names.states.size();
            names.states.push_back(m.state_name(s));
        }
    const StateId bot = names.states.size();
    names.states.push_back(fresh_name(m.names().states, "__bot"));
    const ActionId loop = ensure_loop_action(names);

    Memdp::Rows rows(m.num_envs(), std::vector<std::vector<Choice>>(bot + 1));
    for (EnvId e = 0; e < m.num_envs(); ++e) {
        for (StateId s = 0; s < m.num_states(); ++s) {
            if (!image[s]) continue;
            for (const auto& c : m.choices(e, s)) {
                std::vector<Entry> kept;
                Rational leaving = 0;
                for (const auto& entry : c.dist.entries()) {
                    if (image[entry.target])
                        kept.push_back(Entry{*image[entry.target], entry.prob});
                    else
                        leaving += entry.prob;
                }
                if (leaving > 0) kept.push_back(Entry{bot, leaving});
                rows[e][*image[s]].push_back(Choice{c.action, SparseDist(std::move(kept))});
            }
        }
        rows[e][bot].push_back(Choice{loop, SparseDist::dirac(bot)});
    }
    const StateId init = image[m.initial()].value_or(bot);
    return {Memdp(std::move(names), init, std::move(rows)), std::move(image), bot};
}

Surgery buchi_to_reach(const Memdp& m, const StateSet& c) {
    if (c.size() != m.num_states()) throw Error(Errc::UnknownState, "Büchi set does not match the model");
    const std::size_t n = m.num_states();
    NameTables names = m.names();
    const StateId top = n;
    names.states.push_back(fresh_name(m.names().states, "__top"));
    const ActionId loop = ensure_loop_action(names);
    Memdp::Rows rows(m.num_envs(), std::vector<std::vector<Choice>>(n + 1));
    for (EnvId e = 0; e < m.num_envs(); ++e) {
        for (StateId s = 0; s < n; ++s) {
            for (const auto& ch : m.choices(e, s)) {
                std::vector<Entry> entries;
                Rational halved = 0;
                for (const auto& entry : ch.dist.entries()) {
                    if (c.test(entry.target)) {
                        entries.push_back(Entry{entry.target, entry.prob / 2});
                        halved += entry.prob / 2;
                    } else {
                        entries.push_back(entry);
                    }
                }
                if (halved > 0) entries.push_back(Entry{top, halved});
                rows[e][s].push_back(Choice{ch.action, SparseDist(std::move(entries))});
            }
        }
        rows[e][top].push_back(Choice{loop, SparseDist::dirac(top)});
    }
    std::vector<std::optional<StateId>> image(n);
    for (StateId s = 0; s < n; ++s) image[s] = s;
    return {Memdp(std::move(names), m.initial(), std::move(rows)), std::move(image), top};
}

}  // namespace memdp
