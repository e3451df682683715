#include "memdp/strategy.hpp"

#include "memdp/solver.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace memdp {

const std::vector<ActionId>* Fsc::actions(std::size_t node, StateId s) const {
    auto it = act.find({node, s});
    return it == act.end() ? nullptr : &it->second;
}

std::optional<std::size_t> Fsc::next(std::size_t node, StateId s, ActionId a, StateId t) const {
    auto it = update.find({node, s, a, t});
    if (it == update.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Fsc::node_of(const EnvSet& envs) const {
    auto it = std::find(nodes.begin(), nodes.end(), envs);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<ActionId> allowed_actions(const Memdp& m, const Belief& b,
                                      const std::function<bool(const Belief&)>& winning) {
    std::vector<ActionId> out;
    for (ActionId a : m.enabled(b.state)) {
        const auto next = belief_successors(m, b, a);
        if (std::all_of(next.begin(), next.end(), winning)) out.push_back(a);
    }
    return out;
}

namespace {

// Local analysis of one environment set, shared by every belief with that set.
struct Component {
    LocalMemdp local;
    LocalRabinResult result;
};

Component analyse(const Memdp& m, const EnvSet& envs, Checker& checker) {
    LocalMemdp l = build_local(m, envs, FrontierScope::AllStates);
    StateSet all_frontiers(l.model.num_states());
    for (std::size_t f = 0; f < l.frontiers.size(); ++f) all_frontiers.set(l.frontier_id(f));
    const StateSet wf = win_local(m, l, all_frontiers, [&](const Belief& b) { return checker.solve(b); });
    LocalRabinResult r = local_rabin(l, wf, checker.objective());
    return {std::move(l), std::move(r)};
}

}  // namespace

Fsc synthesize(const Memdp& m, const RabinObjective& phi) {
    Checker checker(m, phi);
    const Belief start{m.initial(), m.all_envs()};
    if (!checker.solve(start)) throw Error(Errc::NotWinning, "the initial belief is not almost-surely winning");

    Fsc f;
    f.num_envs = m.num_envs();
    std::map<EnvSet, Component> components;
    auto node = [&](const EnvSet& envs) {
        if (auto k = f.node_of(envs)) return *k;
        f.nodes.push_back(envs);
        return f.nodes.size() - 1;
    };
    auto component = [&](const EnvSet& envs) -> const Component& {
        auto it = components.find(envs);
        if (it == components.end()) it = components.emplace(envs, analyse(m, envs, checker)).first;
        return it->second;
    };
    f.initial_node = node(start.envs);

    std::set<Belief> seen{start};
    std::deque<Belief> work{start};
    while (!work.empty()) {
        const Belief b = work.front();
        work.pop_front();
        const Component& c = component(b.envs);
        const StateId ls = *c.local.local_of[b.state];
        if (!c.result.region.test(ls))
            throw Error(Errc::NotWinning, "reached losing belief " + belief_label(m, b) + " during synthesis");

        // Win-set states stay inside the region of their lowest immediately winning pair.
        const StateSet* keep = &c.result.region;
        for (const auto& region : c.result.pair_regions)
            if (region.test(ls)) {
                keep = &region;
                break;
            }
        const auto stays = [&](const Belief& next) {
            if (next.envs == b.envs) return keep->test(*c.local.local_of[next.state]);
            return checker.solve(next);
        };
        const auto acts = allowed_actions(m, b, stays);
        if (acts.empty())
            throw Error(Errc::NotWinning, "no allowed action at winning belief " + belief_label(m, b));

        const std::size_t here = node(b.envs);
        f.act[{here, b.state}] = acts;
        for (ActionId a : acts)
            for (const Belief& next : belief_successors(m, b, a)) {
                f.update[{here, b.state, a, next.state}] = node(next.envs);
                if (seen.insert(next).second) work.push_back(next);
            }
    }
    return f;
}

Mc InducedMc::chain() const {
    Mc out;
    out.initial = 0;
    out.graph.succ.resize(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) out.graph.succ[k] = rows[k].support();
    return out;
}

std::vector<InducedMc> fsc_product(const Memdp& m, const Fsc& f) {
    if (f.num_envs != m.num_envs())
        throw Error(Errc::BadFormat, "controller is for " + std::to_string(f.num_envs) + " environments, model has " +
                                         std::to_string(m.num_envs()));
    std::vector<InducedMc> out;
    for (EnvId e = 0; e < m.num_envs(); ++e) {
        InducedMc mc;
        mc.env = e;
        std::map<std::pair<StateId, std::size_t>, StateId> index;
        auto discover = [&](StateId s, std::size_t n) {
            auto [it, fresh] = index.emplace(std::pair{s, n}, mc.states.size());
            if (fresh) mc.states.emplace_back(s, n);
            return it->second;
        };
        discover(m.initial(), f.initial_node);
        for (StateId k = 0; k < mc.states.size(); ++k) {
            const auto [s, n] = mc.states[k];
            const auto* acts = f.actions(n, s);
            if (!acts || acts->empty())
                throw Error(Errc::UncoveredBelief, "controller has no action at state '" + m.state_name(s) + "', node " +
                                                       std::to_string(n));
            const Rational weight(1, static_cast<long long>(acts->size()));
            std::map<StateId, Rational> acc;
            for (ActionId a : *acts) {
                const SparseDist* d = m.transition(e, s, a);
                if (!d)
                    throw Error(Errc::UncoveredBelief, "controller plays disabled action '" + m.action_name(a) +
                                                           "' at state '" + m.state_name(s) + "'");
                for (const auto& entry : d->entries()) {
                    const auto to = f.next(n, s, a, entry.target);
                    if (!to)
                        throw Error(Errc::UncoveredBelief, "controller has no memory update for '" + m.state_name(s) +
                                                               "' -" + m.action_name(a) + "-> '" +
                                                               m.state_name(entry.target) + "'");
                    acc[discover(entry.target, *to)] += weight * entry.prob;
                }
            }
            std::vector<Entry> entries;
            for (auto& [t, p] : acc) entries.push_back(Entry{t, std::move(p)});
            mc.rows.push_back(SparseDist(std::move(entries)));
        }
        out.push_back(std::move(mc));
    }
    return out;
}

bool verify_fsc(const Memdp& m, const Fsc& f, const RabinObjective& phi) {
    check_rabin(phi, m.num_states());
    for (const auto& mc : fsc_product(m, f)) {
        RabinObjective lifted;
        for (const auto& p : phi.pairs) {
            RabinPair q{StateSet(mc.states.size()), StateSet(mc.states.size())};
            for (StateId k = 0; k < mc.states.size(); ++k) {
                if (p.b.test(mc.states[k].first)) q.b.set(k);
                if (p.c.test(mc.states[k].first)) q.c.set(k);
            }
            lifted.pairs.push_back(std::move(q));
        }
        if (!mc_as_rabin_holds(mc.chain(), lifted)) return false;
    }
    return true;
}

}  // namespace memdp
