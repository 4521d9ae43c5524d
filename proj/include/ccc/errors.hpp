#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

// Malformed input text (polynomial, spec file, family file).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a semantic constraint
// (bad partition, out-of-range coefficient, mismatched dimensions).
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ccc
