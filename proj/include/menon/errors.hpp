#ifndef MENON_ERRORS_HPP
#define MENON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace menon {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- field construction ---
struct NotMonic : Error      { using Error::Error; };
struct NotSquarefree : Error { using Error::Error; };
struct DegreeZero : Error    { using Error::Error; };

// --- cross-object misuse ---
struct FieldMismatch : Error { using Error::Error; };

// --- ideal arithmetic ---
struct ZeroIdeal : Error     { using Error::Error; };
struct NotDivisible : Error  { using Error::Error; };
struct NotADivisor : Error   { using Error::Error; };
struct NotCoprime : Error    { using Error::Error; };

// --- residue / character layer ---
struct EnumerationBoundExceeded : Error { using Error::Error; };
struct NotPrimitive : Error             { using Error::Error; };
struct NotUnitModConductor : Error      { using Error::Error; };

// --- identity layer ---
struct BudgetExceeded : Error      { using Error::Error; };
struct WrongF : Error              { using Error::Error; };
// An exact-arithmetic postcondition failed; always an implementation bug.
struct NonIntegerResult : Error    { using Error::Error; };
struct NonIntegerScalar : Error    { using Error::Error; };
// Two evaluators of the same sum disagreed; always an implementation bug,
// distinct from an identity mismatch (which is reported, not thrown).
struct InternalInconsistency : Error { using Error::Error; };

} // namespace menon

#endif
