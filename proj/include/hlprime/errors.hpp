// errors.hpp
// Exception types. Domain violations use std::domain_error, queries past a
// counter's limit use std::out_of_range; the two below cover the rest.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hlprime {

/// A request would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the byte offset where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace hlprime
