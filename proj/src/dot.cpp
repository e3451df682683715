#include "memdp/dot.hpp"

#include <functional>
#include <sstream>

namespace memdp {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string render(const Memdp& m, const std::function<bool(StateId)>& diamond) {
    std::ostringstream out;
    out << "digraph " << quote(m.names().model) << " {\n";
    for (EnvId e = 0; e < m.num_envs(); ++e) {
        out << "  subgraph " << quote("cluster_env" + std::to_string(e)) << " {\n";
        out << "    label=" << quote("env " + m.env_name(e)) << ";\n";
        for (StateId s = 0; s < m.num_states(); ++s) {
            if (!m.domain(s).contains(e)) continue;
            out << "    " << quote("e" + std::to_string(e) + "_" + std::to_string(s)) << " [label=" << quote(m.state_name(s));
            if (diamond(s)) out << ", shape=diamond";
            if (s == m.initial()) out << ", penwidth=2";
            out << "];\n";
        }
        for (StateId s = 0; s < m.num_states(); ++s)
            for (const auto& c : m.choices(e, s))
                for (const auto& entry : c.dist.entries())
                    out << "    " << quote("e" + std::to_string(e) + "_" + std::to_string(s)) << " -> "
                        << quote("e" + std::to_string(e) + "_" + std::to_string(entry.target))
                        << " [label=" << quote(m.action_name(c.action) + " " + entry.prob.str()) << "];\n";
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace

std::string export_dot(const Memdp& m) {
    return render(m, [](StateId) { return false; });
}

std::string export_dot(const Bomdp& b) {
    return render(b.model, [](StateId) { return false; });
}

std::string export_dot(const LocalMemdp& l) {
    return render(l.model, [&](StateId s) { return l.is_frontier(s); });
}

std::string export_dot(const InducedMc& mc, const Memdp& m, const Fsc& f) {
    std::ostringstream out;
    out << "digraph " << quote(m.names().model + "_env" + m.env_name(mc.env)) << " {\n";
    out << "  subgraph " << quote("cluster_env" + std::to_string(mc.env)) << " {\n";
    out << "    label=" << quote("env " + m.env_name(mc.env)) << ";\n";
    for (std::size_t k = 0; k < mc.states.size(); ++k) {
        const auto [s, node] = mc.states[k];
        out << "    " << quote("n" + std::to_string(k))
            << " [label=" << quote(m.state_name(s) + env_set_label(m, f.nodes.at(node))) << (k == 0 ? ", penwidth=2" : "")
            << "];\n";
    }
    for (std::size_t k = 0; k < mc.rows.size(); ++k)
        for (const auto& entry : mc.rows[k].entries())
            out << "    " << quote("n" + std::to_string(k)) << " -> " << quote("n" + std::to_string(entry.target))
                << " [label=" << quote(entry.prob.str()) << "];\n";
    out << "  }\n}\n";
    return out.str();
}

}  // namespace memdp
