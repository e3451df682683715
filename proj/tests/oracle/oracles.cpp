#include "oracle/oracles.hpp"

#include <algorithm>
#include <map>

namespace memdp::oracle {

const char* const kRevealingLoop = R"(memdp revealing_loop
environments 2
states s1 s2
actions a
initial s1
env 1
s1 a -> s1 1
s2 a -> s2 1
env 2
s1 a -> s1 1/2, s2 1/2
s2 a -> s2 1
)";

const char* const kObservation = R"(memdp observation
environments 3
states s0 s1 s2 s3 s4
actions a1 a2
initial s0
env 1
s0 a1 -> s1 1
s0 a2 -> s2 1/2, s3 1/2
s1 a1 -> s2 1
s2 a1 -> s4 1
s3 a1 -> s4 1
s4 a1 -> s4 1
env 2
s0 a1 -> s1 1
s0 a2 -> s2 1
s1 a1 -> s2 1
s2 a1 -> s4 1
s3 a1 -> s4 1
s4 a1 -> s4 1
env 3
s0 a1 -> s1 1
s0 a2 -> s3 1
s1 a1 -> s2 1
s2 a1 -> s4 1
s3 a1 -> s4 1
s4 a1 -> s4 1
)";

const char* const kCommitted = R"(memdp committed
environments 2
states s0 bad
actions a1 a2
initial s0
env 1
s0 a1 -> s0 1
s0 a2 -> bad 1
bad a1 -> bad 1
bad a2 -> bad 1
env 2
s0 a1 -> bad 1
s0 a2 -> s0 1
bad a1 -> bad 1
bad a2 -> bad 1
)";

std::vector<std::vector<bool>> closure(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < n; ++u) {
        r[u][u] = true;
        for (std::size_t v : g[u]) r[u][v] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t u = 0; u < n; ++u)
            if (r[u][k])
                for (std::size_t v = 0; v < n; ++v)
                    if (r[k][v]) r[u][v] = true;
    return r;
}

std::vector<std::set<std::size_t>> closure_bsccs(const Graph& g, std::size_t init) {
    const auto r = closure(g);
    const std::size_t n = g.size();
    std::set<std::set<std::size_t>> found;
    for (std::size_t u = 0; u < n; ++u) {
        if (!r[init][u]) continue;
        bool bottom = true;
        for (std::size_t v = 0; v < n && bottom; ++v)
            if (r[u][v] && !r[v][u]) bottom = false;
        if (!bottom) continue;
        std::set<std::size_t> comp;
        for (std::size_t v = 0; v < n; ++v)
            if (r[u][v]) comp.insert(v);
        found.insert(comp);
    }
    return {found.begin(), found.end()};
}

namespace {

bool pair_holds(const std::set<std::size_t>& bscc, const RabinPair& p) {
    bool meets = false;
    for (std::size_t s : bscc) {
        if (!p.b.test(s)) return false;
        meets = meets || p.c.test(s);
    }
    return meets;
}

bool some_pair(const std::set<std::size_t>& bscc, const RabinObjective& phi) {
    return std::any_of(phi.pairs.begin(), phi.pairs.end(), [&](const RabinPair& p) { return pair_holds(bscc, p); });
}

}  // namespace

bool chain_as_rabin(const Graph& g, std::size_t init, const RabinObjective& phi) {
    for (const auto& b : closure_bsccs(g, init))
        if (!some_pair(b, phi)) return false;
    return true;
}

bool chain_possible_rabin(const Graph& g, std::size_t init, const RabinObjective& phi) {
    for (const auto& b : closure_bsccs(g, init))
        if (some_pair(b, phi)) return true;
    return false;
}

bool any_md_strategy(const Mdp& m, const std::function<bool(const Graph&)>& visit) {
    const std::size_t n = m.num_states();
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        Graph g(n);
        for (std::size_t s = 0; s < n; ++s) {
            if (m.choices[s].empty())
                g[s] = {s};
            else
                g[s] = m.choices[s][pick[s]].targets;
        }
        if (visit(g)) return true;
        std::size_t s = 0;
        while (s < n) {
            if (++pick[s] < std::max<std::size_t>(m.choices[s].size(), 1)) break;
            pick[s] = 0;
            ++s;
        }
        if (s == n) return false;
    }
}

StateSet md_as_rabin_region(const Mdp& m, const RabinObjective& phi) {
    StateSet out(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s)
        if (any_md_strategy(m, [&](const Graph& g) { return chain_as_rabin(g, s, phi); })) out.set(s);
    return out;
}

StateSet md_as_reach_region(const Mdp& m, const StateSet& target) {
    StateSet out(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s)
        if (any_md_strategy(m, [&](Graph g) {
                for (std::size_t t = 0; t < g.size(); ++t)
                    if (target.test(t)) g[t] = {t};
                for (const auto& b : closure_bsccs(g, s))
                    if (std::none_of(b.begin(), b.end(), [&](std::size_t x) { return target.test(x); })) return false;
                return true;
            }))
            out.set(s);
    return out;
}

StateSet md_possible_rabin_region(const Mdp& m, const RabinObjective& phi) {
    StateSet out(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s)
        if (any_md_strategy(m, [&](const Graph& g) { return chain_possible_rabin(g, s, phi); })) out.set(s);
    return out;
}

Product explicit_product(const Memdp& m) {
    Product p;
    std::map<PlainBelief, std::size_t> index;
    auto discover = [&](const PlainBelief& b) {
        auto [it, fresh] = index.emplace(b, p.states.size());
        if (fresh) p.states.push_back(b);
        return it->second;
    };
    std::set<EnvId> all;
    for (EnvId e = 0; e < m.num_envs(); ++e) all.insert(e);
    discover({m.initial(), all});
    for (std::size_t k = 0; k < p.states.size(); ++k) {
        const auto [s, envs] = p.states[k];
        std::vector<ActionId> acts;
        for (const auto& c : m.choices(*envs.begin(), s)) acts.push_back(c.action);
        std::vector<std::vector<std::vector<std::size_t>>> rows;
        for (ActionId a : acts) {
            std::vector<std::vector<std::size_t>> per_env(m.num_envs());
            for (EnvId e : envs)
                for (const auto& entry : m.transition(e, s, a)->entries()) {
                    std::set<EnvId> next;
                    for (EnvId j : envs)
                        if (m.transition(j, s, a)->prob(entry.target) > 0) next.insert(j);
                    per_env[e].push_back(discover({entry.target, next}));
                }
            rows.push_back(std::move(per_env));
        }
        p.enabled.push_back(std::move(acts));
        p.succ.push_back(std::move(rows));
    }
    return p;
}

std::set<PlainBelief> explicit_beliefs(const Memdp& m) {
    const Product p = explicit_product(m);
    return {p.states.begin(), p.states.end()};
}

namespace {

struct Enumerator {
    const Product& p;
    std::size_t num_envs;
    const std::function<bool(const std::vector<Chain>&)>& visit;
    std::vector<unsigned> mask;
    std::size_t count = 0;

    std::vector<std::size_t> chosen(std::size_t k) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < p.enabled[k].size(); ++i)
            if (mask[k] >> i & 1) out.push_back(i);
        return out;
    }

    std::optional<std::size_t> open_state() const {
        std::vector<bool> seen(p.states.size(), false);
        seen[0] = true;
        std::vector<std::size_t> queue{0};
        std::optional<std::size_t> best;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const std::size_t k = queue[q];
            if (!mask[k]) {
                best = best ? std::min(*best, k) : k;
                continue;
            }
            for (std::size_t i : chosen(k))
                for (const auto& targets : p.succ[k][i])
                    for (std::size_t t : targets)
                        if (!seen[t]) {
                            seen[t] = true;
                            queue.push_back(t);
                        }
        }
        return best;
    }

    bool run() {
        const auto k = open_state();
        if (!k) {
            ++count;
            std::vector<Chain> chains;
            for (EnvId e = 0; e < num_envs; ++e) {
                Chain c;
                c.graph.resize(p.states.size());
                for (std::size_t x = 0; x < p.states.size(); ++x) {
                    c.state_of.push_back(p.states[x].first);
                    if (!mask[x]) continue;
                    for (std::size_t i : chosen(x))
                        for (std::size_t t : p.succ[x][i][e]) c.graph[x].push_back(t);
                }
                chains.push_back(std::move(c));
            }
            return visit(chains);
        }
        for (unsigned m = 1; m < (1u << p.enabled[*k].size()); ++m) {
            mask[*k] = m;
            if (run()) return true;
        }
        mask[*k] = 0;
        return false;
    }
};

StateSet on_chain(const Chain& c, const StateSet& set) {
    StateSet out(c.graph.size());
    for (std::size_t k = 0; k < c.graph.size(); ++k)
        if (set.test(c.state_of[k])) out.set(k);
    return out;
}

}  // namespace

bool for_each_support_strategy(const Product& p, std::size_t num_envs,
                               const std::function<bool(const std::vector<Chain>&)>& visit, std::size_t* count) {
    Enumerator en{p, num_envs, visit, std::vector<unsigned>(p.states.size(), 0)};
    const bool stopped = en.run();
    if (count) *count = en.count;
    return stopped;
}

bool chain_reach(const Chain& c, const StateSet& target) {
    Graph g = c.graph;
    const StateSet t = on_chain(c, target);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (t.test(k)) g[k] = {k};
    for (const auto& b : closure_bsccs(g, c.init))
        if (std::none_of(b.begin(), b.end(), [&](std::size_t x) { return t.test(x); })) return false;
    return true;
}

bool chain_safety(const Chain& c, const StateSet& safe) {
    const auto r = closure(c.graph);
    for (std::size_t k = 0; k < c.graph.size(); ++k)
        if (r[c.init][k] && !safe.test(c.state_of[k])) return false;
    return true;
}

bool chain_buchi(const Chain& c, const StateSet& target) {
    for (const auto& b : closure_bsccs(c.graph, c.init))
        if (std::none_of(b.begin(), b.end(), [&](std::size_t x) { return target.test(c.state_of[x]); })) return false;
    return true;
}

bool chain_cobuchi(const Chain& c, const StateSet& target) {
    for (const auto& b : closure_bsccs(c.graph, c.init))
        if (!std::all_of(b.begin(), b.end(), [&](std::size_t x) { return target.test(c.state_of[x]); })) return false;
    return true;
}

bool chain_parity(const Chain& c, const std::vector<unsigned>& priority) {
    for (const auto& b : closure_bsccs(c.graph, c.init)) {
        unsigned top = 0;
        for (std::size_t x : b) top = std::max(top, priority[c.state_of[x]]);
        if (top % 2 != 0) return false;
    }
    return true;
}

bool chain_rabin(const Chain& c, const RabinObjective& phi) {
    RabinObjective lifted;
    for (const auto& p : phi.pairs) lifted.pairs.push_back(RabinPair{on_chain(c, p.b), on_chain(c, p.c)});
    return chain_as_rabin(c.graph, c.init, lifted);
}

bool exists_winning_strategy(const Memdp& m, const std::function<bool(const Chain&)>& wins) {
    return for_each_support_strategy(explicit_product(m), m.num_envs(), [&](const std::vector<Chain>& chains) {
        return std::all_of(chains.begin(), chains.end(), wins);
    });
}

}  // namespace memdp::oracle
