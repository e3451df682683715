#include "memdp/fsc_format.hpp"

#include <json.hpp>

namespace memdp {

using nlohmann::json;

namespace {

json env_list(const EnvSet& envs, const Memdp& m) {
    json out = json::array();
    for (EnvId e : envs.members()) out.push_back(m.env_name(e));
    return out;
}

}  // namespace

std::string write_fsc(const Fsc& f, const Memdp& m) {
    json doc;
    doc["format"] = kFscFormatTag;
    doc["environments"] = m.names().envs;
    doc["nodes"] = json::array();
    for (const auto& n : f.nodes) doc["nodes"].push_back(env_list(n, m));
    doc["initial"] = f.initial_node;
    doc["action_map"] = json::array();
    for (const auto& [key, acts] : f.act) {
        json names = json::array();
        for (ActionId a : acts) names.push_back(m.action_name(a));
        doc["action_map"].push_back({{"node", key.first}, {"state", m.state_name(key.second)}, {"actions", names}});
    }
    doc["memory_update"] = json::array();
    for (const auto& [key, to] : f.update) {
        const auto& [node, s, a, t] = key;
        doc["memory_update"].push_back({{"node", node},
                                        {"state", m.state_name(s)},
                                        {"action", m.action_name(a)},
                                        {"next", m.state_name(t)},
                                        {"to", to}});
    }
    return doc.dump(2) + "\n";
}

Fsc read_fsc(std::string_view text, const Memdp& m) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::BadFormat, std::string("controller is not valid JSON: ") + e.what());
    }
    auto state = [&](const json& j) {
        const auto s = m.find_state(j.get<std::string>());
        if (!s) throw Error(Errc::BadFormat, "controller refers to unknown state '" + j.get<std::string>() + "'");
        return *s;
    };
    auto action = [&](const json& j) {
        const auto a = m.find_action(j.get<std::string>());
        if (!a) throw Error(Errc::BadFormat, "controller refers to unknown action '" + j.get<std::string>() + "'");
        return *a;
    };
    try {
        if (doc.at("format").get<std::string>() != kFscFormatTag)
            throw Error(Errc::BadFormat, "unsupported controller format '" + doc.at("format").get<std::string>() + "'");
        if (doc.at("environments").get<std::vector<std::string>>() != m.names().envs)
            throw Error(Errc::BadFormat, "controller environments do not match the model");
        Fsc f;
        f.num_envs = m.num_envs();
        for (const auto& node : doc.at("nodes")) {
            EnvSet envs(m.num_envs());
            for (const auto& name : node) {
                const auto e = m.find_env(name.get<std::string>());
                if (!e) throw Error(Errc::BadFormat, "controller refers to unknown environment '" + name.get<std::string>() + "'");
                envs.insert(*e);
            }
            f.nodes.push_back(std::move(envs));
        }
        const auto node_index = [&](const json& j) {
            const auto k = j.get<std::size_t>();
            if (k >= f.nodes.size()) throw Error(Errc::BadFormat, "memory node " + std::to_string(k) + " out of range");
            return k;
        };
        f.initial_node = node_index(doc.at("initial"));
        for (const auto& row : doc.at("action_map")) {
            std::vector<ActionId> acts;
            for (const auto& a : row.at("actions")) acts.push_back(action(a));
            f.act[{node_index(row.at("node")), state(row.at("state"))}] = std::move(acts);
        }
        for (const auto& u : doc.at("memory_update"))
            f.update[{node_index(u.at("node")), state(u.at("state")), action(u.at("action")), state(u.at("next"))}] =
                node_index(u.at("to"));
        return f;
    } catch (const json::exception& e) {
        throw Error(Errc::BadFormat, std::string("malformed controller: ") + e.what());
    }
}

}  // namespace memdp
