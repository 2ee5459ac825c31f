#ifndef TWW_ERRORS_HPP
#define TWW_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace tww {

enum class ErrorKind {
    invalid_contraction,
    invalid_partition,
    invalid_sequence,
    invalid_decomposition,
    precondition,
    resource,
    domain,
    parse,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    Error(ErrorKind kind, std::string message, std::size_t index)
        : std::runtime_error(std::move(message)), kind_(kind), index_(index) {}

    ErrorKind kind() const { return kind_; }

    // For sequence errors: index of the offending step.
    std::optional<std::size_t> index() const { return index_; }

    const char* kind_name() const {
        switch (kind_) {
            case ErrorKind::invalid_contraction: return "invalid-contraction";
            case ErrorKind::invalid_partition: return "invalid-partition";
            case ErrorKind::invalid_sequence: return "invalid-sequence";
            case ErrorKind::invalid_decomposition: return "invalid-decomposition";
            case ErrorKind::precondition: return "precondition";
            case ErrorKind::resource: return "resource";
            case ErrorKind::domain: return "domain";
            case ErrorKind::parse: return "parse";
            case ErrorKind::internal: return "internal";
        }
        return "unknown";
    }

private:
    ErrorKind kind_;
    std::optional<std::size_t> index_;
};

}  // namespace tww

#endif
