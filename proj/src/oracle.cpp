#include "memdp/solver.hpp"
#include "memdp/strategy.hpp"

namespace memdp {

namespace {

class Search {
public:
    Search(const Bomdp& b, const RabinObjective& phi, const OracleCaps& caps)
        : b_(b), phi_(lift_to_bomdp(b, phi)), caps_(caps), n_(b.model.num_states()), mask_(n_, 0) {
        for (StateId s = 0; s < n_; ++s) actions_.push_back(b.model.enabled(s));
    }

    bool run() { return extend(); }
    std::size_t evaluated() const noexcept { return evaluated_; }

    std::vector<std::optional<std::vector<ActionId>>> witness() const {
        std::vector<std::optional<std::vector<ActionId>>> out(n_);
        for (StateId s = 0; s < n_; ++s)
            if (mask_[s]) out[s] = chosen(s);
        return out;
    }

private:
    std::vector<ActionId> chosen(StateId s) const {
        std::vector<ActionId> out;
        for (std::size_t k = 0; k < actions_[s].size(); ++k)
            if (mask_[s] >> k & 1) out.push_back(actions_[s][k]);
        return out;
    }

    // Lowest unassigned state reachable under the current partial assignment.
    std::optional<StateId> next_unassigned() const {
        std::vector<bool> seen(n_, false);
        std::vector<StateId> work{b_.model.initial()};
        seen[b_.model.initial()] = true;
        std::optional<StateId> best;
        while (!work.empty()) {
            const StateId s = work.back();
            work.pop_back();
            if (!mask_[s]) {
                if (!best || s < *best) best = s;
                continue;
            }
            for (ActionId a : chosen(s))
                for (EnvId e : b_.model.domain(s).members())
                    for (const auto& entry : b_.model.transition(e, s, a)->entries())
                        if (!seen[entry.target]) {
                            seen[entry.target] = true;
                            work.push_back(entry.target);
                        }
        }
        return best;
    }

    bool evaluate() {
        if (++evaluated_ > caps_.max_strategies)
            throw Error(Errc::Exploded, "oracle exceeded " + std::to_string(caps_.max_strategies) + " strategies");
        for (EnvId e = 0; e < b_.model.num_envs(); ++e) {
            Mc mc;
            mc.initial = b_.model.initial();
            mc.graph.succ.resize(n_);
            for (StateId s = 0; s < n_; ++s) {
                if (!mask_[s] || !b_.model.domain(s).contains(e)) continue;
                for (ActionId a : chosen(s))
                    for (const auto& entry : b_.model.transition(e, s, a)->entries())
                        mc.graph.succ[s].push_back(entry.target);
            }
            if (!mc_as_rabin_holds(mc, phi_)) return false;
        }
        return true;
    }

    bool extend() {
        const auto s = next_unassigned();
        if (!s) return evaluate();
        if (actions_[*s].size() >= 63) throw Error(Errc::Exploded, "too many actions for subset enumeration");
        const std::uint64_t limit = std::uint64_t{1} << actions_[*s].size();
        for (std::uint64_t m = 1; m < limit; ++m) {
            mask_[*s] = m;
            if (extend()) return true;
        }
        mask_[*s] = 0;
        return false;
    }

    const Bomdp& b_;
    RabinObjective phi_;
    OracleCaps caps_;
    std::size_t n_;
    std::vector<std::vector<ActionId>> actions_;
    std::vector<std::uint64_t> mask_;
    std::size_t evaluated_ = 0;
};

}  // namespace

OracleResult brute_force_check(const Memdp& m, const RabinObjective& phi, const OracleCaps& caps) {
    check_rabin(phi, m.num_states());
    OracleResult out;
    out.bomdp = build_bomdp(m, caps.max_beliefs);
    Search search(*out.bomdp, phi, caps);
    out.winning = search.run();
    out.evaluated = search.evaluated();
    if (out.winning) out.witness = search.witness();
    return out;
}

}  // namespace memdp
