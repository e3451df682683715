#pragma once

#include "memdp/model.hpp"
#include "memdp/strategy.hpp"

#include <string>
#include <string_view>

namespace memdp {

inline constexpr std::string_view kFscFormatTag = "memdp-fsc/1";

/// JSON document with states, actions and environments referenced by name.
std::string write_fsc(const Fsc& f, const Memdp& m);

/// Throws BadFormat on malformed documents or names unknown to `m`.
Fsc read_fsc(std::string_view text, const Memdp& m);

}  // namespace memdp
