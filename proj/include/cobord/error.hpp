#ifndef COBORD_ERROR_HPP
#define COBORD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cobord {

/// Domain-level failure: invalid manifold, non-cycle chain, mismatched
/// contexts and the like. Plumbing code in gf2 uses std::invalid_argument.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based offending line (0 if unknown).
class ParseError : public Error
{
  public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line)
    {
    }

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

} // namespace cobord

#endif
