#pragma once

#include "memdp/belief.hpp"
#include "memdp/model.hpp"
#include "memdp/strategy.hpp"

#include <string>

namespace memdp {

/// Graphviz text with one cluster per environment. Output is deterministic.
std::string export_dot(const Memdp& m);
std::string export_dot(const Bomdp& b);
/// Frontier states are drawn as diamonds.
std::string export_dot(const LocalMemdp& l);
/// Nodes are labelled "state{node}".
std::string export_dot(const InducedMc& mc, const Memdp& m, const Fsc& f);

}  // namespace memdp
