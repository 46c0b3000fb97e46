#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace normshell {

enum class Errc {
    invalid_argument,
    dimension_mismatch,
    dimension_too_small,
    zero_vector,
    infeasible,
    not_in_shell,
    tolerance_not_reached,
    parse_error,
};

inline const char* to_string(Errc code) {
    switch (code) {
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::dimension_too_small: return "DimensionTooSmall";
        case Errc::zero_vector: return "ZeroVector";
        case Errc::infeasible: return "Infeasible";
        case Errc::not_in_shell: return "NotInShell";
        case Errc::tolerance_not_reached: return "ToleranceNotReached";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this exception. The
/// code lets callers separate infeasible inputs from misuse; `step` is set
/// when a decomposition fails inside its inductive loop.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> step = std::nullopt)
        : std::runtime_error(what), code_(code), step_(step) {}

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> step() const noexcept { return step_; }

    bool infeasible() const noexcept {
        return code_ == Errc::infeasible || code_ == Errc::not_in_shell ||
               code_ == Errc::dimension_too_small;
    }

private:
    Errc code_;
    std::optional<std::size_t> step_;
};

} // namespace normshell
