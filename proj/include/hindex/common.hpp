#pragma once

#include <stdexcept>
#include <string>

namespace hindex {

// Thrown when a statistic is well-formed but carries no information
// (e.g. a homogeneity test with zero pooled variance).
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by the citation-file readers; carries a line-anchored message.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hindex
