#ifndef FROBOP_ERRORS_HPP
#define FROBOP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frobop {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in a polynomial or operator expression.  `position` is the
// 0-based offset into the input string where scanning failed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Values from two different ring contexts were mixed in one operation.
class ContextMismatch : public Error {
public:
    using Error::Error;
};

// Field inverse of zero.
class DivisionByZero : public Error {
public:
    using Error::Error;
};

// Exponent or counter arithmetic left the supported range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// An argument violates a documented precondition (zero input where a nonzero
// one is required, bad level, out-of-range enumeration, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace frobop

#endif
