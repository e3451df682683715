#pragma once

#include "memdp/model.hpp"
#include "memdp/objective.hpp"

#include <string>
#include <string_view>

namespace memdp {

/// Line-oriented model syntax; '#' starts a comment:
///
///     memdp example
///     environments 2
///     states s1 s2
///     actions a
///     initial s1
///     env 1
///     s1 a -> s1 1
///     s2 a -> s2 1
///     env 2
///     s1 a -> s1 1/2, s2 1/2
///     s2 a -> s2 1
///
/// Syntax errors carry a line and column.
RawModel parse_model_raw(std::string_view src);

/// parse_model_raw followed by validate_memdp.
Memdp parse_model(std::string_view src);

std::string print_model(const Memdp& m);

/// One of
///     reach {s...}    safety {s...}    buchi {s...}    cobuchi {s...}
///     parity s:k ...  (unlisted states get priority 0)
///     rabin (B={s...} C={s...}) ...
ObjectiveSpec parse_objective(std::string_view src, const Memdp& m);

/// Rabin pairs in the `rabin` syntax.
std::string print_rabin(const RabinObjective& phi, const Memdp& m);

}  // namespace memdp
