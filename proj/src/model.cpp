#include "memdp/model.hpp"

#include <algorithm>
#include <set>

namespace memdp {

SparseDist::SparseDist(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.target < b.target; });
    Rational total = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i > 0 && entries_[i].target == entries_[i - 1].target)
            throw Error(Errc::DuplicateName, "target " + std::to_string(entries_[i].target) + " listed twice in a distribution");
        if (entries_[i].prob <= 0) throw Error(Errc::DistributionSum, "non-positive probability in distribution");
        total += entries_[i].prob;
    }
    if (total != 1) throw Error(Errc::DistributionSum, "probabilities sum to " + total.str() + ", expected 1");
}

SparseDist SparseDist::dirac(StateId target) { return SparseDist({Entry{target, Rational(1)}}); }

Rational SparseDist::prob(StateId target) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), target,
                               [](const Entry& e, StateId t) { return e.target < t; });
    if (it != entries_.end() && it->target == target) return it->prob;
    return 0;
}

bool SparseDist::supports(StateId target) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), target,
                               [](const Entry& e, StateId t) { return e.target < t; });
    return it != entries_.end() && it->target == target;
}

std::vector<StateId> SparseDist::support() const {
    std::vector<StateId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.target);
    return out;
}

namespace {

template <class Index>
void build_index(const std::vector<std::string>& names, Index& index, const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!index.emplace(names[i], i).second)
            throw Error(Errc::DuplicateName, std::string("duplicate ") + what + " name '" + names[i] + "'");
    }
}

}  // namespace

Memdp::Memdp(NameTables names, StateId initial, Rows rows)
    : names_(std::move(names)), initial_(initial), rows_(std::move(rows)) {
    build_index(names_.states, state_index_, "state");
    build_index(names_.actions, action_index_, "action");
    build_index(names_.envs, env_index_, "environment");
    const std::size_t n = num_states();
    if (num_envs() == 0) throw Error(Errc::EmptyEnvSet, "a model needs at least one environment");
    if (initial_ >= n) throw Error(Errc::UnknownState, "initial state out of range");
    if (rows_.size() != num_envs()) throw Error(Errc::ActionMismatch, "row table does not match environment count");

    domain_.assign(n, EnvSet(num_envs()));
    for (EnvId e = 0; e < num_envs(); ++e) {
        if (rows_[e].size() != n) throw Error(Errc::ActionMismatch, "row table does not match state count");
        for (StateId s = 0; s < n; ++s) {
            const auto& cs = rows_[e][s];
            if (!cs.empty()) domain_[s].insert(e);
            for (std::size_t k = 0; k < cs.size(); ++k) {
                if (cs[k].action >= num_actions()) throw Error(Errc::DanglingState, "action id out of range");
                if (k > 0 && cs[k].action <= cs[k - 1].action)
                    throw Error(Errc::DuplicateName, "choices of state '" + names_.states[s] + "' not sorted or duplicated");
                for (const auto& entry : cs[k].dist.entries())
                    if (entry.target >= n) throw Error(Errc::DanglingState, "transition target out of range");
            }
        }
    }
    for (StateId s = 0; s < n; ++s) {
        if (domain_[s].empty()) throw Error(Errc::Deadlock, "state '" + names_.states[s] + "' has no enabled action");
        const auto envs = domain_[s].members();
        const auto& ref = rows_[envs.front()][s];
        for (EnvId e : envs) {
            const auto& cs = rows_[e][s];
            bool same = cs.size() == ref.size();
            for (std::size_t k = 0; same && k < cs.size(); ++k) same = cs[k].action == ref[k].action;
            if (!same)
                throw Error(Errc::ActionMismatch, "state '" + names_.states[s] + "' enables different actions in environments " +
                                                      names_.envs[envs.front()] + " and " + names_.envs[e]);
        }
    }
    // A target must have transitions in every environment that can reach it.
    for (EnvId e = 0; e < num_envs(); ++e)
        for (StateId s = 0; s < n; ++s)
            for (const auto& c : rows_[e][s])
                for (const auto& entry : c.dist.entries())
                    if (!domain_[entry.target].contains(e))
                        throw Error(Errc::DanglingState, "state '" + names_.states[entry.target] + "' is reached in environment " +
                                                             names_.envs[e] + " but has no transitions there");
}

std::optional<StateId> Memdp::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId> Memdp::find_action(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EnvId> Memdp::find_env(std::string_view name) const {
    auto it = env_index_.find(std::string(name));
    if (it == env_index_.end()) return std::nullopt;
    return it->second;
}

const SparseDist* Memdp::transition(EnvId env, StateId s, ActionId a) const {
    const auto& cs = rows_.at(env).at(s);
    auto it = std::lower_bound(cs.begin(), cs.end(), a, [](const Choice& c, ActionId x) { return c.action < x; });
    if (it != cs.end() && it->action == a) return &it->dist;
    return nullptr;
}

std::vector<ActionId> Memdp::enabled(StateId s) const {
    std::vector<ActionId> out;
    for (const auto& c : rows_[domain_.at(s).front()][s]) out.push_back(c.action);
    return out;
}

bool Memdp::operator==(const Memdp& other) const {
    return names_.states == other.names_.states && names_.actions == other.names_.actions &&
           names_.envs == other.names_.envs && initial_ == other.initial_ && rows_ == other.rows_;
}

namespace {

bool reserved(std::string_view name) { return name.substr(0, kReservedPrefix.size()) == kReservedPrefix; }

std::unordered_map<std::string, std::size_t> index_decls(const std::vector<RawDecl>& decls, const char* what) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < decls.size(); ++i) {
        if (reserved(decls[i].name))
            throw Error(Errc::ReservedName, std::string(what) + " name '" + decls[i].name + "' uses the reserved '__' prefix",
                        decls[i].where);
        if (!index.emplace(decls[i].name, i).second)
            throw Error(Errc::DuplicateName, std::string("duplicate ") + what + " '" + decls[i].name + "'", decls[i].where);
    }
    return index;
}

}  // namespace

Memdp validate_memdp(const RawModel& raw) {
    const auto state_index = index_decls(raw.states, "state");
    const auto action_index = index_decls(raw.actions, "action");
    if (raw.states.empty()) throw Error(Errc::Deadlock, "model declares no states", raw.initial.where);
    if (raw.actions.empty()) throw Error(Errc::Deadlock, "model declares no actions", raw.initial.where);
    if (raw.envs.empty()) throw Error(Errc::EmptyEnvSet, "model declares no environment blocks", raw.envs_where);
    if (raw.declared_envs != raw.envs.size())
        throw Error(Errc::SyntaxError,
                    "declared " + std::to_string(raw.declared_envs) + " environments but found " + std::to_string(raw.envs.size()) +
                        " env blocks",
                    raw.envs_where);

    auto init = state_index.find(raw.initial.name);
    if (init == state_index.end())
        throw Error(Errc::DanglingState, "unknown initial state '" + raw.initial.name + "'", raw.initial.where);

    const std::size_t n = raw.states.size();
    const std::size_t k = raw.envs.size();
    NameTables names;
    names.model = raw.name;
    for (const auto& d : raw.states) names.states.push_back(d.name);
    for (const auto& d : raw.actions) names.actions.push_back(d.name);

    std::set<std::string> env_names;
    Memdp::Rows rows(k, std::vector<std::vector<Choice>>(n));
    // Location of the first row of each (env, state) for error reporting.
    std::vector<std::vector<std::optional<SourceLocation>>> first_row(k, std::vector<std::optional<SourceLocation>>(n));
    for (std::size_t e = 0; e < k; ++e) {
        const auto& env = raw.envs[e];
        if (!env_names.insert(env.name).second)
            throw Error(Errc::DuplicateName, "duplicate env block '" + env.name + "'", env.where);
        names.envs.push_back(env.name);
        for (const auto& row : env.rows) {
            auto s = state_index.find(row.state);
            if (s == state_index.end()) throw Error(Errc::DanglingState, "unknown state '" + row.state + "'", row.where);
            auto a = action_index.find(row.action);
            if (a == action_index.end()) throw Error(Errc::DanglingState, "unknown action '" + row.action + "'", row.where);
            std::vector<Entry> entries;
            for (const auto& t : row.targets) {
                auto target = state_index.find(t.state);
                if (target == state_index.end())
                    throw Error(Errc::DanglingState, "unknown target state '" + t.state + "'", t.where);
                entries.push_back(Entry{target->second, t.prob});
            }
            SparseDist dist;
            try {
                dist = SparseDist(std::move(entries));
            } catch (const Error& err) {
                throw Error(err.code(), "row '" + row.state + " " + row.action + "': " + err.message(), row.where);
            }
            auto& cs = rows[e][s->second];
            for (const auto& c : cs)
                if (c.action == a->second)
                    throw Error(Errc::DuplicateName, "row '" + row.state + " " + row.action + "' defined twice", row.where);
            cs.push_back(Choice{a->second, std::move(dist)});
            if (!first_row[e][s->second]) first_row[e][s->second] = row.where;
        }
        for (auto& per_state : rows[e])
            std::sort(per_state.begin(), per_state.end(), [](const Choice& x, const Choice& y) { return x.action < y.action; });
    }

    for (StateId s = 0; s < n; ++s) {
        bool any = false;
        for (std::size_t e = 0; e < k; ++e) any = any || !rows[e][s].empty();
        if (!any) throw Error(Errc::Deadlock, "state '" + raw.states[s].name + "' has no enabled action", raw.states[s].where);
        for (std::size_t e = 1; e < k; ++e) {
            bool same = rows[e][s].size() == rows[0][s].size();
            for (std::size_t i = 0; same && i < rows[e][s].size(); ++i) same = rows[e][s][i].action == rows[0][s][i].action;
            if (!same)
                throw Error(Errc::ActionMismatch,
                            "state '" + raw.states[s].name + "' enables different actions in env " + raw.envs[0].name + " and env " +
                                raw.envs[e].name,
                            first_row[e][s].value_or(raw.envs[e].where));
        }
    }
    return Memdp(std::move(names), init->second, std::move(rows));
}

Memdp restrict_envs(const Memdp& m, const EnvSet& envs) {
    if (envs.empty()) throw Error(Errc::EmptyEnvSet, "cannot restrict to an empty environment set");
    if (envs.universe() != m.num_envs()) throw Error(Errc::EmptyEnvSet, "environment set has the wrong universe");
    NameTables names = m.names();
    names.envs.clear();
    Memdp::Rows rows;
    for (EnvId e : envs.members()) {
        names.envs.push_back(m.env_name(e));
        rows.push_back(m.rows()[e]);
    }
    return Memdp(std::move(names), m.initial(), std::move(rows));
}

Memdp reinit(const Memdp& m, StateId initial) {
    if (initial >= m.num_states()) throw Error(Errc::UnknownState, "state id " + std::to_string(initial) + " out of range");
    return Memdp(m.names(), initial, m.rows());
}

std::string fresh_name(const std::vector<std::string>& taken, std::string_view base) {
    auto used = [&](const std::string& candidate) { return std::find(taken.begin(), taken.end(), candidate) != taken.end(); };
    std::string name(base);
    for (std::size_t i = 1; used(name); ++i) name = std::string(base) + std::to_string(i);
    return name;
}

ActionId ensure_loop_action(NameTables& names) {
    constexpr std::string_view loop = "__loop";
    auto it = std::find(names.actions.begin(), names.actions.end(), loop);
    if (it != names.actions.end()) return static_cast<ActionId>(it - names.actions.begin());
    names.actions.emplace_back(loop);
    return names.actions.size() - 1;
}

std::string env_set_label(const Memdp& m, const EnvSet& envs) {
    std::string out = "{";
    bool first = true;
    for (EnvId e : envs.members()) {
        if (!first) out += ",";
        out += e < m.num_envs() ? m.env_name(e) : std::to_string(e + 1);
        first = false;
    }
    return out + "}";
}

StateSet make_state_set(std::size_t n, std::initializer_list<StateId> members) {
    StateSet set(n);
    for (StateId s : members) set.set(s);
    return set;
}

std::vector<StateId> members(const StateSet& set) {
    std::vector<StateId> out;
    for (auto i = set.find_first(); i != StateSet::npos; i = set.find_next(i)) out.push_back(i);
    return out;
}

}  // namespace memdp
