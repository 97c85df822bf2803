#ifndef WAYBELOW_ERRORS_HPP
#define WAYBELOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace waybelow {

enum class ErrorKind
{
    dimension_mismatch,
    dimension_too_large,
    not_open,
    unsupported_space,
    non_core_compact,
    point_outside,
    precondition_failed,
    inconclusive,
    depth_exceeded,
    not_ascending,
    incoherent,
    invalid_argument,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::dimension_too_large: return "DimensionTooLarge";
        case ErrorKind::not_open: return "NotOpen";
        case ErrorKind::unsupported_space: return "UnsupportedSpace";
        case ErrorKind::non_core_compact: return "NonCoreCompact";
        case ErrorKind::point_outside: return "PointOutside";
        case ErrorKind::precondition_failed: return "PreconditionFailed";
        case ErrorKind::inconclusive: return "Inconclusive";
        case ErrorKind::depth_exceeded: return "DepthExceeded";
        case ErrorKind::not_ascending: return "NotAscending";
        case ErrorKind::incoherent: return "Incoherent";
        case ErrorKind::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Domain error raised by every module of the library.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace waybelow

#endif // WAYBELOW_ERRORS_HPP
