#include "memdp/simulate.hpp"

#include <limits>
#include <sstream>

namespace memdp {

std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

StateId draw_target(std::mt19937_64& rng, const SparseDist& d) {
    using boost::multiprecision::cpp_int;
    const Rational u(cpp_int(rng()), cpp_int(1) << 64);
    Rational acc = 0;
    const auto entries = d.entries();
    for (const auto& e : entries) {
        acc += e.prob;
        if (u < acc) return e.target;
    }
    return entries.back().target;
}

Trace simulate(const Memdp& m, const Fsc& f, EnvId env, std::size_t steps, std::uint64_t seed) {
    if (env >= m.num_envs()) throw Error(Errc::EmptyEnvSet, "environment " + std::to_string(env + 1) + " does not exist");
    std::mt19937_64 rng(seed);
    Trace t{seed, env, {}};
    Belief b{m.initial(), m.all_envs()};
    std::size_t node = f.initial_node;
    t.steps.push_back(TraceStep{b.state, b.envs, std::nullopt});
    for (std::size_t k = 0; k < steps; ++k) {
        const auto* acts = f.actions(node, b.state);
        if (!acts || acts->empty())
            throw Error(Errc::UncoveredBelief, "controller has no action at " + belief_label(m, b));
        const ActionId a = (*acts)[draw_index(rng, acts->size())];
        const SparseDist* d = m.transition(env, b.state, a);
        if (!d) throw Error(Errc::UncoveredBelief, "controller plays disabled action '" + m.action_name(a) + "'");
        const StateId next = draw_target(rng, *d);
        const auto to = f.next(node, b.state, a, next);
        if (!to) throw Error(Errc::UncoveredBelief, "controller has no memory update after " + belief_label(m, b));
        t.steps.back().action = a;
        b = belief_update(m, b, a, next);
        node = *to;
        t.steps.push_back(TraceStep{b.state, b.envs, std::nullopt});
    }
    return t;
}

std::string format_trace(const Trace& t, const Memdp& m) {
    std::ostringstream out;
    out << "# env " << m.env_name(t.env) << " seed " << t.seed << "\n";
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& st = t.steps[k];
        out << k << ' ' << m.state_name(st.state) << env_set_label(m, st.belief);
        if (st.action) out << ' ' << m.action_name(*st.action);
        out << "\n";
    }
    return out.str();
}

}  // namespace memdp
