#include "memdp/belief.hpp"
#include "memdp/dot.hpp"
#include "memdp/fsc_format.hpp"
#include "memdp/random_model.hpp"
#include "memdp/simulate.hpp"
#include "memdp/solver.hpp"
#include "memdp/strategy.hpp"
#include "memdp/text_format.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace memdp;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

Memdp load_model(const std::string& path) {
    const std::string text = slurp(path);
    try {
        return parse_model(text);
    } catch (const Error& e) {
        throw InputError(path + ":" + e.what());
    }
}

/// A path to an objective file, or the objective text itself.
CompiledObjective load_objective(const std::string& arg, const Memdp& m) {
    std::error_code ec;
    const bool is_file = std::filesystem::is_regular_file(arg, ec);
    const std::string text = is_file ? slurp(arg) : arg;
    try {
        return objective_to_rabin(parse_objective(text, m), m);
    } catch (const Error& e) {
        throw InputError((is_file ? arg : std::string("objective")) + ":" + e.what());
    }
}

EnvSet parse_env_list(const std::string& arg, const Memdp& m) {
    EnvSet envs(m.num_envs());
    std::string cleaned;
    for (char c : arg) cleaned += (c == '{' || c == '}' || c == ',') ? ' ' : c;
    std::istringstream in(cleaned);
    for (std::string name; in >> name;) {
        const auto e = m.find_env(name);
        if (!e) throw InputError("unknown environment '" + name + "'");
        envs.insert(*e);
    }
    if (envs.empty()) throw InputError("empty environment set '" + arg + "'");
    return envs;
}

void print_stats(const SolverStats& s) {
    std::cout << "depth " << s.max_depth << "\n"
              << "calls " << s.calls << "\n"
              << "distinct-beliefs " << s.distinct_beliefs << "\n"
              << "memo-hits " << s.memo_hits << "\n"
              << "peak-resident-states " << s.peak_resident_states << "\n"
              << "wall-ms " << s.wall_ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qualitative model checking and strategy synthesis for multiple-environment MDPs"};
    app.require_subcommand(1);

    std::string model_path, objective, fsc_path, out_path, semantics = "almost-sure", local_envs;
    bool region = false, stats = false, naive = false, bomdp = false;
    std::size_t cap = OracleCaps{}.max_strategies, beliefs_cap = OracleCaps{}.max_beliefs;
    std::size_t env = 1, steps = 0, states = 0, actions = 0, envs = 0, branching = 2;
    std::uint64_t seed = 0;

    auto* check_cmd = app.add_subcommand("check", "decide whether the initial belief is winning");
    check_cmd->add_option("model", model_path, "model file")->required();
    check_cmd->add_option("--objective", objective, "objective file or expression")->required();
    check_cmd->add_option("--semantics", semantics, "almost-sure or possible")
        ->check(CLI::IsMember({"almost-sure", "possible"}));
    check_cmd->add_flag("--region", region, "print every winning belief");
    check_cmd->add_flag("--stats", stats, "print recursion statistics");
    check_cmd->add_flag("--naive-global", naive, "use the non-localized belief-product procedure (debug)");

    auto* synth_cmd = app.add_subcommand("synthesize", "write a winning finite-state controller");
    synth_cmd->add_option("model", model_path, "model file")->required();
    synth_cmd->add_option("--objective", objective, "objective file or expression")->required();
    synth_cmd->add_option("--out", out_path, "controller file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "check a controller against an objective");
    verify_cmd->add_option("model", model_path, "model file")->required();
    verify_cmd->add_option("--fsc", fsc_path, "controller file")->required();
    verify_cmd->add_option("--objective", objective, "objective file or expression")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search over support strategies");
    oracle_cmd->add_option("model", model_path, "model file")->required();
    oracle_cmd->add_option("--objective", objective, "objective file or expression")->required();
    oracle_cmd->add_option("--cap", cap, "maximum number of strategies evaluated");
    oracle_cmd->add_option("--belief-cap", beliefs_cap, "maximum number of belief states");

    auto* sim_cmd = app.add_subcommand("simulate", "sample a trace under a controller");
    sim_cmd->add_option("model", model_path, "model file")->required();
    sim_cmd->add_option("--fsc", fsc_path, "controller file")->required();
    sim_cmd->add_option("--env", env, "environment (1-based)")->required();
    sim_cmd->add_option("--steps", steps, "number of steps")->required();
    sim_cmd->add_option("--seed", seed, "random seed")->required();
    sim_cmd->add_option("--objective", objective, "objective the controller was synthesized for");

    auto* dot_cmd = app.add_subcommand("export-dot", "write a Graphviz rendering");
    dot_cmd->add_option("model", model_path, "model file")->required();
    auto* bomdp_flag = dot_cmd->add_flag("--bomdp", bomdp, "render the belief product");
    dot_cmd->add_option("--local", local_envs, "render the local model of an environment set, e.g. 1,2")
        ->excludes(bomdp_flag);
    dot_cmd->add_option("--out", out_path, "output file")->required();

    auto* gen_cmd = app.add_subcommand("gen-random", "write a random model");
    gen_cmd->add_option("--states", states, "number of states")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--actions", actions, "number of actions")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--envs", envs, "number of environments")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", seed, "random seed")->required();
    gen_cmd->add_option("--branching", branching, "maximum support size")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsage;
    }

    try {
        if (*check_cmd) {
            const Memdp m = load_model(model_path);
            const CompiledObjective c = load_objective(objective, m);
            bool won;
            SolverStats st;
            if (semantics == "possible")
                won = possible_check(c.model, c.rabin);
            else if (naive)
                won = naive_global_check(c.model, c.rabin);
            else
                won = check(c.model, c.rabin, &st);
            std::cout << (won ? "winning" : "losing") << "\n";
            if (stats && semantics != "possible" && !naive) print_stats(st);
            if (region) {
                if (semantics == "possible") throw InputError("--region is only available for almost-sure semantics");
                for (const Belief& b : winning_region(c.model, c.rabin).members())
                    std::cout << belief_label(c.model, b) << "\n";
            }
            return won ? kHolds : kFails;
        }
        if (*synth_cmd) {
            const Memdp m = load_model(model_path);
            const CompiledObjective c = load_objective(objective, m);
            try {
                const Fsc f = synthesize(c.model, c.rabin);
                spit(out_path, write_fsc(f, c.model));
                std::cout << "winning: controller with " << f.nodes.size() << " memory nodes written to " << out_path
                          << "\n";
                return kHolds;
            } catch (const Error& e) {
                if (e.code() != Errc::NotWinning) throw;
                std::cout << "losing: " << e.what() << "\n";
                return kFails;
            }
        }
        if (*verify_cmd) {
            const Memdp m = load_model(model_path);
            const CompiledObjective c = load_objective(objective, m);
            const Fsc f = read_fsc(slurp(fsc_path), c.model);
            const bool ok = verify_fsc(c.model, f, c.rabin);
            std::cout << (ok ? "valid" : "invalid") << "\n";
            return ok ? kHolds : kFails;
        }
        if (*oracle_cmd) {
            const Memdp m = load_model(model_path);
            const CompiledObjective c = load_objective(objective, m);
            const OracleResult r = brute_force_check(c.model, c.rabin, OracleCaps{beliefs_cap, cap});
            std::cout << (r.winning ? "winning" : "losing") << "\n";
            std::cout << "evaluated " << r.evaluated << "\n";
            if (r.winning)
                for (StateId s = 0; s < r.witness.size(); ++s) {
                    if (!r.witness[s]) continue;
                    std::cout << r.bomdp->model.state_name(s) << ":";
                    for (ActionId a : *r.witness[s]) std::cout << ' ' << c.model.action_name(a);
                    std::cout << "\n";
                }
            return r.winning ? kHolds : kFails;
        }
        if (*sim_cmd) {
            const Memdp user = load_model(model_path);
            const Memdp m = objective.empty() ? user : load_objective(objective, user).model;
            const Fsc f = read_fsc(slurp(fsc_path), m);
            if (env == 0 || env > m.num_envs()) throw InputError("--env must be between 1 and " + std::to_string(m.num_envs()));
            std::cout << format_trace(simulate(m, f, env - 1, steps, seed), m);
            return kHolds;
        }
        if (*dot_cmd) {
            const Memdp m = load_model(model_path);
            std::string text;
            if (bomdp)
                text = export_dot(build_bomdp(m));
            else if (!local_envs.empty())
                text = export_dot(build_local(m, parse_env_list(local_envs, m)));
            else
                text = export_dot(m);
            spit(out_path, text);
            return kHolds;
        }
        if (*gen_cmd) {
            spit(out_path, print_model(gen_random(states, actions, envs, branching, seed)));
            return kHolds;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
