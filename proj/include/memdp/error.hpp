#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace memdp {

/// Position inside a model or objective source text (1-based).
struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;
};

enum class Errc {
    SyntaxError,
    DistributionSum,
    ActionMismatch,
    DanglingState,
    Deadlock,
    DuplicateName,
    ReservedName,
    EmptyEnvSet,
    UnknownState,
    BadRabinPair,
    ImpossibleObservation,
    DisabledAction,
    EmptyRestriction,
    Exploded,
    NotWinning,
    UncoveredBelief,
    BadFormat,
};

std::string_view to_string(Errc code);

/// Every failure surfaced by the library. Parse and validation errors carry a location.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, std::optional<SourceLocation> where = std::nullopt);

    Errc code() const noexcept { return code_; }
    const std::optional<SourceLocation>& where() const noexcept { return where_; }
    /// The message without code and location.
    const std::string& message() const noexcept { return message_; }

private:
    Errc code_;
    std::string message_;
    std::optional<SourceLocation> where_;
};

}  // namespace memdp
