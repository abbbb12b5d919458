#pragma once

#include <stdexcept>
#include <string>

// Exception taxonomy for the toolkit.  The split matters to callers: input
// and precondition problems are recoverable (fix the data and retry), while
// NoConvergence signals that the numerical kernel itself gave up.  The CLI
// maps the former to exit code 2 and the latter to exit code 3.

namespace woven {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- input / precondition failures ------------------------------------------

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(what) {}
};

struct ValueError : Error {
    explicit ValueError(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct NonSymmetric : Error {
    explicit NonSymmetric(const std::string& what) : Error(what) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

struct NotAFrame : Error {
    explicit NotAFrame(const std::string& what) : Error(what) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

struct NoRedundancy : Error {
    explicit NoRedundancy(const std::string& what) : Error(what) {}
};

struct NotWoven : Error {
    explicit NotWoven(const std::string& what) : Error(what) {}
};

struct NotParseval : Error {
    explicit NotParseval(const std::string& what) : Error(what) {}
};

struct NotDual : Error {
    explicit NotDual(const std::string& what) : Error(what) {}
};

struct ZeroScalar : Error {
    explicit ZeroScalar(const std::string& what) : Error(what) {}
};

// -- numerical failures ------------------------------------------------------

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

}  // namespace woven
