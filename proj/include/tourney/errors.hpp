#pragma once

#include <stdexcept>
#include <string>

namespace tourney {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A matrix argument is not square / sizes disagree.
struct DimensionError : Error { using Error::Error; };

/// A 0/1 matrix is not a valid tournament (nonzero diagonal, or a pair
/// of alternatives with zero or two edges between them).
struct StructureError : Error { using Error::Error; };

/// An alternative index is out of range.
struct IndexError : Error { using Error::Error; };

/// dominates(i, i) was asked; the dominance relation is irreflexive.
struct SelfComparisonError : Error { using Error::Error; };

/// An exhaustive computation was requested above its documented cap.
struct CapExceededError : Error { using Error::Error; };

/// An operation requires a nonempty set of alternatives.
struct EmptySetError : Error { using Error::Error; };

/// A solution identifier could not be recognized.
struct UnknownSolutionError : Error { using Error::Error; };

/// A numeric argument is outside its admissible range.
struct RangeError : Error { using Error::Error; };

/// The operation is undefined for this degenerate input size.
struct DegenerateError : Error { using Error::Error; };

/// The voter count must be odd so majorities are never tied.
struct EvenVotersError : Error { using Error::Error; };

/// Two vectors that must have equal length do not.
struct LengthMismatchError : Error { using Error::Error; };

/// A documented precondition of the operation does not hold.
struct PreconditionError : Error { using Error::Error; };

/// An experiment plan contains an uninstantiable cell.
struct PlanError : Error { using Error::Error; };

/// A text input could not be parsed; carries the 1-based line number.
struct ParseError : Error {
    ParseError(int line_no, const std::string& message)
        : Error("line " + std::to_string(line_no) + ": " + message), line(line_no) {}
    int line;
};

/// A configuration string or file is invalid.
struct ConfigError : Error { using Error::Error; };

/// A file could not be opened, read, or written.
struct IoError : Error { using Error::Error; };

}  // namespace tourney
