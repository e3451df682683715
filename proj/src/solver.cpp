#include "memdp/solver.hpp"

#include <algorithm>
#include <chrono>

namespace memdp {

Surgery state_remove(const Memdp& m, const StateSet& x) {
    if (x.size() != m.num_states()) throw Error(Errc::UnknownState, "removal set does not match the model");
    const std::size_t n = m.num_states();
    NameTables names = m.names();
    names.states.clear();
    std::vector<std::optional<StateId>> image(n);
    for (StateId s = 0; s < n; ++s)
        if (!x.test(s)) {
            image[s] = names.states.size();
            names.states.push_back(m.state_name(s));
        }
    const StateId bot = names.states.size();
    names.states.push_back(fresh_name(m.names().states, "__bot"));
    const ActionId loop = ensure_loop_action(names);

    Memdp::Rows rows(m.num_envs(), std::vector<std::vector<Choice>>(bot + 1));
    for (StateId s = 0; s < n; ++s) {
        if (!image[s]) continue;
        const auto envs = m.domain(s).members();
        for (ActionId a : m.enabled(s)) {
            bool touches = false;
            for (EnvId e : envs)
                for (const auto& entry : m.transition(e, s, a)->entries()) touches = touches || x.test(entry.target);
            for (EnvId e : envs) {
                if (touches) {
                    rows[e][*image[s]].push_back(Choice{a, SparseDist::dirac(bot)});
                    continue;
                }
                std::vector<Entry> entries;
                for (const auto& entry : m.transition(e, s, a)->entries())
                    entries.push_back(Entry{*image[entry.target], entry.prob});
                rows[e][*image[s]].push_back(Choice{a, SparseDist(std::move(entries))});
            }
        }
    }
    for (EnvId e = 0; e < m.num_envs(); ++e) rows[e][bot].push_back(Choice{loop, SparseDist::dirac(bot)});
    const StateId init = image[m.initial()].value_or(bot);
    return {Memdp(std::move(names), init, std::move(rows)), std::move(image), bot};
}

StateSet bomdp_as_reach(const Memdp& m, const StateSet& target) {
    const std::size_t n = m.num_states();
    if (target.size() != n) throw Error(Errc::UnknownState, "target set does not match the model");
    StateSet alive(n);
    alive.set();
    // Actions of s not yet disabled.
    std::vector<std::vector<ActionId>> actions(n);
    for (StateId s = 0; s < n; ++s) actions[s] = m.enabled(s);

    for (;;) {
        StateSet losing(n);
        const StateSet goal = target & alive;
        for (EnvId i = 0; i < m.num_envs(); ++i) {
            Mdp mdp;
            mdp.initial = m.initial();
            mdp.choices.resize(n);
            for (StateId s = 0; s < n; ++s) {
                if (!alive.test(s) || !m.domain(s).contains(i)) continue;
                for (ActionId a : actions[s]) mdp.choices[s].push_back(ActionSupport{a, m.transition(i, s, a)->support()});
            }
            const StateSet win = mdp_as_reach(mdp, goal);
            for (StateId s = 0; s < n; ++s)
                if (alive.test(s) && m.domain(s).contains(i) && !win.test(s)) losing.set(s);
        }
        if (losing.none()) return alive;
        alive -= losing;
        for (StateId s = 0; s < n; ++s) {
            if (!alive.test(s)) continue;
            const auto envs = m.domain(s).members();
            std::erase_if(actions[s], [&](ActionId a) {
                return std::any_of(envs.begin(), envs.end(), [&](EnvId e) {
                    const auto es = m.transition(e, s, a)->entries();
                    return std::any_of(es.begin(), es.end(), [&](const Entry& en) { return !alive.test(en.target); });
                });
            });
        }
    }
}

StateSet safe_buchi_region(const Memdp& m, const StateSet& b, const StateSet& c) {
    const std::size_t n = m.num_states();
    StateSet out(n);
    if (b.none()) return out;
    const Surgery restricted = state_restrict(m, b);
    StateSet c2(restricted.model.num_states());
    for (StateId s = 0; s < n; ++s)
        if (c.test(s) && b.test(s)) c2.set(*restricted.image[s]);
    const Surgery halved = buchi_to_reach(restricted.model, c2);
    StateSet top(halved.model.num_states());
    top.set(halved.added);
    const StateSet win = bomdp_as_reach(halved.model, top);
    for (StateId s = 0; s < n; ++s)
        if (restricted.image[s] && win.test(*halved.image[*restricted.image[s]])) out.set(s);
    return out;
}

LocalRabinResult local_rabin(const LocalMemdp& l, const StateSet& wf, const RabinObjective& phi) {
    const std::size_t n = l.model.num_states();
    LocalRabinResult out{StateSet(n), StateSet(n), {}};
    for (const auto& pair : l.lift(phi).pairs) {
        StateSet region = safe_buchi_region(l.model, pair.b | wf, pair.c | wf);
        out.win_set |= region;
        out.pair_regions.push_back(std::move(region));
    }
    out.region = bomdp_as_reach(l.model, out.win_set);
    return out;
}

Checker::Checker(const Memdp& m, RabinObjective phi) : m_(m), phi_(std::move(phi)) { check_rabin(phi_, m.num_states()); }

bool Checker::solve(const Belief& b) { return solve(b, 1); }

bool Checker::solve(const Belief& b, std::size_t depth) {
    ++stats_.calls;
    if (auto it = memo_.find(b); it != memo_.end()) {
        ++stats_.memo_hits;
        return it->second;
    }
    stats_.max_depth = std::max(stats_.max_depth, depth);
    const LocalMemdp l = build_local(m_, b.envs, b.state);
    resident_ += l.model.num_states();
    stats_.peak_resident_states = std::max(stats_.peak_resident_states, resident_);
    const StateSet wf =
        win_local(m_, l, reachable_frontier(l), [&](const Belief& next) { return solve(next, depth + 1); });
    const bool won = local_rabin(l, wf, phi_).region.test(l.model.initial());
    resident_ -= l.model.num_states();
    memo_.emplace(b, won);
    stats_.distinct_beliefs = memo_.size();
    return won;
}

bool check(const Memdp& m, const RabinObjective& phi, SolverStats* stats) {
    const auto start = std::chrono::steady_clock::now();
    Checker checker(m, phi);
    const bool won = checker.solve(Belief{m.initial(), m.all_envs()});
    if (stats) {
        *stats = checker.stats();
        stats->wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return won;
}

bool BeliefRegion::contains(const Belief& b) const {
    auto it = by_envs.find(b.envs);
    return it != by_envs.end() && b.state < it->second.size() && it->second.test(b.state);
}

std::vector<Belief> BeliefRegion::members() const {
    std::vector<Belief> out;
    for (const auto& [envs, states] : by_envs)
        for (auto s = states.find_first(); s != StateSet::npos; s = states.find_next(s)) out.push_back(Belief{s, envs});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// All nonempty subsets of {0..k-1}, smallest cardinality first, bitmask order within.
std::vector<EnvSet> subsets_by_size(std::size_t k) {
    std::vector<EnvSet> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        EnvSet s(k);
        for (EnvId e = 0; e < k; ++e)
            if (mask >> e & 1) s.insert(e);
        out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(), [](const EnvSet& a, const EnvSet& b) { return a.size() < b.size(); });
    return out;
}

}  // namespace

BeliefRegion winning_region(const Memdp& m, const RabinObjective& phi, std::size_t cap) {
    check_rabin(phi, m.num_states());
    const std::size_t k = m.num_envs();
    if (k >= 63 || ((std::uint64_t{1} << k) - 1) > cap / std::max<std::size_t>(m.num_states(), 1))
        throw Error(Errc::Exploded, "belief table exceeds " + std::to_string(cap) + " entries");
    BeliefRegion out;
    for (const EnvSet& envs : subsets_by_size(k)) {
        const LocalMemdp l = build_local(m, envs, FrontierScope::AllStates);
        StateSet wf(l.model.num_states());
        for (std::size_t f = 0; f < l.frontiers.size(); ++f)
            if (out.contains(to_glob(m, envs, l.frontiers[f]))) wf.set(l.frontier_id(f));
        const StateSet region = local_rabin(l, wf, phi).region;
        StateSet states(m.num_states());
        for (StateId ls = 0; ls < l.base.size(); ++ls)
            if (region.test(ls)) states.set(l.base[ls]);
        out.by_envs.emplace(envs, std::move(states));
    }
    return out;
}

bool possible_check(const Memdp& m, const RabinObjective& phi) {
    check_rabin(phi, m.num_states());
    for (EnvId e = 0; e < m.num_envs(); ++e)
        if (!mdp_possible_rabin(environment_mdp(m, e), phi).test(m.initial())) return false;
    return true;
}

RabinObjective lift_to_bomdp(const Bomdp& b, const RabinObjective& phi) {
    const std::size_t n = b.beliefs.size();
    RabinObjective out;
    for (const auto& p : phi.pairs) {
        RabinPair lifted{StateSet(n), StateSet(n)};
        for (StateId k = 0; k < n; ++k) {
            if (p.b.test(b.beliefs[k].state)) lifted.b.set(k);
            if (p.c.test(b.beliefs[k].state)) lifted.c.set(k);
        }
        out.pairs.push_back(std::move(lifted));
    }
    return out;
}

bool naive_global_check(const Memdp& m, const RabinObjective& phi, std::size_t cap) {
    check_rabin(phi, m.num_states());
    const Bomdp b = build_bomdp(m, cap);
    StateSet win(b.beliefs.size());
    for (const auto& p : lift_to_bomdp(b, phi).pairs) win |= safe_buchi_region(b.model, p.b, p.c);
    return bomdp_as_reach(b.model, win).test(b.model.initial());
}

}  // namespace memdp
