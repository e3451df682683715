#include "memdp/error.hpp"

namespace memdp {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::DistributionSum: return "DistributionSum";
        case Errc::ActionMismatch: return "ActionMismatch";
        case Errc::DanglingState: return "DanglingState";
        case Errc::Deadlock: return "Deadlock";
        case Errc::DuplicateName: return "DuplicateName";
        case Errc::ReservedName: return "ReservedName";
        case Errc::EmptyEnvSet: return "EmptyEnvSet";
        case Errc::UnknownState: return "UnknownState";
        case Errc::BadRabinPair: return "BadRabinPair";
        case Errc::ImpossibleObservation: return "ImpossibleObservation";
        case Errc::DisabledAction: return "DisabledAction";
        case Errc::EmptyRestriction: return "EmptyRestriction";
        case Errc::Exploded: return "Exploded";
        case Errc::NotWinning: return "NotWinning";
        case Errc::UncoveredBelief: return "UncoveredBelief";
        case Errc::BadFormat: return "BadFormat";
    }
    return "Unknown";
}

namespace {
std::string format_error(Errc code, const std::string& message, const std::optional<SourceLocation>& where) {
    std::string out;
    if (where) {
        out += std::to_string(where->line) + ":" + std::to_string(where->column) + ": ";
    }
    out += std::string(to_string(code)) + ": " + message;
    return out;
}
}  // namespace

Error::Error(Errc code, const std::string& message, std::optional<SourceLocation> where)
    : std::runtime_error(format_error(code, message, where)), code_(code), message_(message), where_(where) {}

}  // namespace memdp
