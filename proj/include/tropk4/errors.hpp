#pragma once

#include <stdexcept>
#include <string>

namespace tropk4 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-side problems (bad files, violated preconditions) derive from
// InputError so the CLI can map them to exit code 2.
struct InputError : Error {
    using Error::Error;
};

#define TROPK4_ERROR(Name, Base)                   \
    struct Name : Base {                           \
        explicit Name(const std::string& what)     \
            : Base(#Name ": " + what) {}           \
    }

TROPK4_ERROR(ParseError, InputError);
TROPK4_ERROR(ZeroPolynomial, InputError);
TROPK4_ERROR(DegreeZero, InputError);
TROPK4_ERROR(ToleranceNotMet, Error);
TROPK4_ERROR(NoSmallRational, Error);
TROPK4_ERROR(Ambiguous, Error);
TROPK4_ERROR(NotInvertible, Error);

TROPK4_ERROR(InvalidGraph, InputError);
TROPK4_ERROR(DisconnectedGraph, InputError);
TROPK4_ERROR(InvalidPoint, InputError);
TROPK4_ERROR(NotEffective, InputError);

TROPK4_ERROR(DegenerateSupport, InputError);
TROPK4_ERROR(NotScaled, InputError);
TROPK4_ERROR(PointNotOnCurve, Error);
TROPK4_ERROR(CycleConstraintViolated, InputError);
TROPK4_ERROR(NotK4, Error);

TROPK4_ERROR(OnBoundary, Error);
TROPK4_ERROR(NotHoneycomb, InputError);
TROPK4_ERROR(GroupingViolation, Error);

TROPK4_ERROR(NotQuartic, InputError);
TROPK4_ERROR(PositiveDimensional, Error);
TROPK4_ERROR(NoSolutionAtValuation, Error);
TROPK4_ERROR(UnresolvedMultiplicity, Error);
TROPK4_ERROR(BranchCountMismatch, Error);
TROPK4_ERROR(WindowExhausted, Error);
TROPK4_ERROR(ResidualCheckFailed, Error);

#undef TROPK4_ERROR

}  // namespace tropk4
