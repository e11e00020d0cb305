#ifndef MDISC_ERRORS_HPP
#define MDISC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdisc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed objects: ring mismatch, zero where a nonzero value is required,
/// violated state invariants.
class StructuralError : public Error {
   public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// exact_div was asked to divide by a polynomial that is not a factor.
class NotDivisibleError : public Error {
   public:
    using Error::Error;
};

/// Text input could not be parsed; `offset` is a 0-based character index.
class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

   private:
    std::size_t offset_;
};

/// A branch that the case analysis proves unreachable was reached. Carries a
/// rendering of the state for diagnosis.
class InconsistencyError : public Error {
   public:
    using Error::Error;
};

}  // namespace mdisc

#endif  // MDISC_ERRORS_HPP
