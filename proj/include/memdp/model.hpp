#pragma once

#include "memdp/env_set.hpp"
#include "memdp/error.hpp"

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace memdp {

using StateId = std::size_t;
using ActionId = std::size_t;
using Rational = boost::multiprecision::cpp_rational;
using StateSet = boost::dynamic_bitset<>;

/// Names starting with this prefix are reserved for states and actions the
/// library introduces during model surgery.
inline constexpr std::string_view kReservedPrefix = "__";

struct Entry {
    StateId target;
    Rational prob;

    bool operator==(const Entry&) const = default;
};

/// Finite-support distribution with exact rational weights.
/// Entries are sorted by target, strictly positive and sum to exactly one.
class SparseDist {
public:
    SparseDist() = default;
    explicit SparseDist(std::vector<Entry> entries);

    static SparseDist dirac(StateId target);

    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    Rational prob(StateId target) const;
    bool supports(StateId target) const;
    std::vector<StateId> support() const;

    bool operator==(const SparseDist&) const = default;

private:
    std::vector<Entry> entries_;
};

struct Choice {
    ActionId action;
    SparseDist dist;

    bool operator==(const Choice&) const = default;
};

struct NameTables {
    std::string model = "memdp";
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::vector<std::string> envs;
};

/// A multiple-environment MDP: one transition function per environment over a
/// shared state and action space.
///
/// Every state carries a domain: the environments in which it has outgoing
/// transitions. User models have full domains. Belief-observation products
/// restrict each state's domain to the environments of its belief. Within the
/// domain of a state, all environments enable exactly the same actions.
class Memdp {
public:
    /// rows[env][state] lists the choices of `state` in `env`, sorted by action.
    using Rows = std::vector<std::vector<std::vector<Choice>>>;

    Memdp(NameTables names, StateId initial, Rows rows);

    std::size_t num_states() const noexcept { return names_.states.size(); }
    std::size_t num_actions() const noexcept { return names_.actions.size(); }
    std::size_t num_envs() const noexcept { return names_.envs.size(); }

    const NameTables& names() const noexcept { return names_; }
    const std::string& state_name(StateId s) const { return names_.states.at(s); }
    const std::string& action_name(ActionId a) const { return names_.actions.at(a); }
    const std::string& env_name(EnvId e) const { return names_.envs.at(e); }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;
    std::optional<EnvId> find_env(std::string_view name) const;

    StateId initial() const noexcept { return initial_; }

    std::span<const Choice> choices(EnvId env, StateId s) const { return rows_.at(env).at(s); }
    /// nullptr when `a` is not enabled at `s` in `env`.
    const SparseDist* transition(EnvId env, StateId s, ActionId a) const;
    std::vector<ActionId> enabled(StateId s) const;
    const EnvSet& domain(StateId s) const { return domain_.at(s); }
    EnvSet all_envs() const { return EnvSet::full(num_envs()); }
    const Rows& rows() const noexcept { return rows_; }

    bool operator==(const Memdp& other) const;

private:
    NameTables names_;
    StateId initial_;
    Rows rows_;
    std::vector<EnvSet> domain_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActionId> action_index_;
    std::unordered_map<std::string, EnvId> env_index_;
};

/// Unvalidated model description as produced by the text parser.
struct RawDecl {
    std::string name;
    SourceLocation where;
};

struct RawTarget {
    std::string state;
    Rational prob;
    SourceLocation where;
};

struct RawRow {
    std::string state;
    std::string action;
    std::vector<RawTarget> targets;
    SourceLocation where;
};

struct RawEnv {
    std::string name;
    std::vector<RawRow> rows;
    SourceLocation where;
};

struct RawModel {
    std::string name = "memdp";
    std::size_t declared_envs = 0;
    SourceLocation envs_where;
    std::vector<RawDecl> states;
    std::vector<RawDecl> actions;
    RawDecl initial;
    std::vector<RawEnv> envs;
};

Memdp validate_memdp(const RawModel& raw);

/// Keeps only the environments in `envs` (indices relative to m).
Memdp restrict_envs(const Memdp& m, const EnvSet& envs);

/// Same model with a different initial state.
Memdp reinit(const Memdp& m, StateId initial);

/// `base` if unused in `taken`, otherwise `base` followed by the smallest free counter.
std::string fresh_name(const std::vector<std::string>& taken, std::string_view base);

/// Id of the reserved `__loop` action used by absorbing states added during
/// surgery, appending it to the table when missing.
ActionId ensure_loop_action(NameTables& names);

/// Display form of an environment set, e.g. "{1,2}".
std::string env_set_label(const Memdp& m, const EnvSet& envs);

StateSet make_state_set(std::size_t n, std::initializer_list<StateId> members);
std::vector<StateId> members(const StateSet& set);

}  // namespace memdp
