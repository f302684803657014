#pragma once

#include <stdexcept>
#include <string>

namespace segscore {

// Error taxonomy, mirrored by the CLI exit codes:
//   ParseError       -> 1  (unreadable or malformed input)
//   ValidationError  -> 2  (model violates the method's hypotheses)
//   NumericError     -> 3  (non-convergence, overflow, lost consistency)
//   UnsupportedError -> 4  (request outside the supported scoring schemes)
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(what) {}
};

}  // namespace segscore
