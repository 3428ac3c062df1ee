#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rsfp {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An operation that is not defined for the given set variant.
struct UnsupportedOperation : Error {
    explicit UnsupportedOperation(const std::string& what) : Error(what) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Malformed problem file or report input.
struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(what) {}
};

// Iterative routine ran out of budget; carries the last iterate and the
// remaining constraint gap so callers can decide what to do with it.
struct NonConvergence : Error {
    std::vector<double> last_iterate;
    double gap;
    NonConvergence(const std::string& what, std::vector<double> iterate, double g)
        : Error(what), last_iterate(std::move(iterate)), gap(g) {}
};

}  // namespace rsfp
