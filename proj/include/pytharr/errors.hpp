// ============================================================================
//  pytharr/errors.hpp
//
//  Exception hierarchy shared by the whole library.  Every domain-level
//  failure is a named exception type deriving from pytharr::Error; parse
//  failures of instance files derive from pytharr::ParseError instead so the
//  command-line driver can map the two families to distinct exit codes.
// ============================================================================
#ifndef PYTHARR_ERRORS_HPP
#define PYTHARR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pytharr {

// Root of all domain errors (exit code 1 at the CLI boundary).
struct Error : std::runtime_error {
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Root of all input-syntax errors (exit code 2 at the CLI boundary).
// Carries enough context (file line / field path) to point at the offender.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define PYTHARR_DEFINE_ERROR(NAME)                                            \
    struct NAME : Error {                                                      \
        explicit NAME(const std::string& what_arg) : Error(what_arg) {}        \
    }

// --- exact linear algebra ---------------------------------------------------
PYTHARR_DEFINE_ERROR(NonSquare);
PYTHARR_DEFINE_ERROR(DimensionMismatch);

// --- gain graphs -------------------------------------------------------------
PYTHARR_DEFINE_ERROR(InvalidEdge);
PYTHARR_DEFINE_ERROR(InvalidWalk);
PYTHARR_DEFINE_ERROR(UnbalancedInput);
PYTHARR_DEFINE_ERROR(NotACircle);

// --- point configurations ----------------------------------------------------
PYTHARR_DEFINE_ERROR(DuplicatePoint);
PYTHARR_DEFINE_ERROR(MissingPoint);
PYTHARR_DEFINE_ERROR(UnknownEdge);
PYTHARR_DEFINE_ERROR(MissingData);

// --- matroids ------------------------------------------------------------------
PYTHARR_DEFINE_ERROR(NotABasis);
PYTHARR_DEFINE_ERROR(ElementInBasis);
PYTHARR_DEFINE_ERROR(NotCircuits);
PYTHARR_DEFINE_ERROR(NotALinearClass);
PYTHARR_DEFINE_ERROR(InvalidIdeal);

// --- arrangements ---------------------------------------------------------------
PYTHARR_DEFINE_ERROR(UnknownLabel);
PYTHARR_DEFINE_ERROR(NotCentral);

// --- derived (edge-space) arrangement --------------------------------------------
PYTHARR_DEFINE_ERROR(NotACircuit);
PYTHARR_DEFINE_ERROR(NoExtendingBasis);
PYTHARR_DEFINE_ERROR(NotLinearClass);
PYTHARR_DEFINE_ERROR(UnrealizableBias);

// --- transport ---------------------------------------------------------------------
PYTHARR_DEFINE_ERROR(NotParallel);
PYTHARR_DEFINE_ERROR(ImpossibleCorrespondence);

// --- rendering ------------------------------------------------------------------------
PYTHARR_DEFINE_ERROR(UnsupportedDimension);

#undef PYTHARR_DEFINE_ERROR

} // namespace pytharr

#endif // PYTHARR_ERRORS_HPP
