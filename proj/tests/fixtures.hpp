#pragma once

// Hand transcriptions of printed formulas, used as golden references.

namespace fixtures {

// Riccati: f induced by (a1 y + a0)/(b1 y + b0), per y-power (2, 1, 0).
inline const char* kRiccatiF[3] = {
    "(a0'*b0 - a0*b0')/(-a1*b0 + b1*a0)",
    "(a1'*b0 + a0'*b1 - a1*b0' - a0*b1')/(-a1*b0 + b1*a0)",
    "(a1'*b1 - a1*b1')/(-a1*b0 + b1*a0)",
};

// Riccati system, each entry "lhs - rhs" with fractions as printed.
inline const char* kRiccatiSystem[3] = {
    "(a1'*b1 - a1*b1')/(-a1*b0 + b1*a0) - X2",
    "(a1'*b0 + a0'*b1 - a1*b0' - a0*b1')/(-a1*b0 + b1*a0) - X1",
    "(a0'*b0 - a0*b0')/(-a1*b0 + b1*a0) - X0",
};

// Abel A: numerator and denominator of f for a1 y + b1 + ln(a2 y + b2).
inline const char* kAbelNum = "-(a1'*a2*y^2 + (a2' + b1'*a2 + a1'*b2)*y + b2' + b1'*b2)";
inline const char* kAbelDen = "a1*a2*y + a1*b2 + a2";

inline const char* kAbelSystem[5] = {
    "a1'*a2 + X2",
    "a2' + b1'*a2 + a1'*b2 + X1",
    "b2' + b1'*b2 + X0",
    "a1*a2 - Y1",
    "a1*b2 + a2 - Y0",
};

// Quadratic over quadratic.
inline const char* kUcNum =
    "(a2'*b2 - a2*b2')*y^4 + (-a2*b1' - a1*b2' + a2'*b1 + a1'*b2)*y^3"
    " + (a2'*b0 + a0'*b2 - a1*b1' + a1'*b1 - a2*b0' - a0*b2')*y^2"
    " + (-a1*b0' - a0*b1' + a1'*b0 + a0'*b1)*y - a0*b0' + a0'*b0";
inline const char* kUcDen = "(a1*b2 - a2*b1)*y^2 + (2*a0*b2 - 2*a2*b0)*y + a0*b1 - a1*b0";

inline const char* kUcSystem[8] = {
    "a2'*b2 - a2*b2' - X4",
    "-a2*b1' - a1*b2' + a2'*b1 + a1'*b2 - X3",
    "a2'*b0 + a0'*b2 - a1*b1' + a1'*b1 - a2*b0' - a0*b2' - X2",
    "-a1*b0' - a0*b1' + a1'*b0 + a0'*b1 - X1",
    "-a0*b0' + a0'*b0 - X0",
    "a1*b2 - a2*b1 - Y2",
    "2*a0*b2 - 2*a2*b0 - Y1",
    "a0*b1 - a1*b0 - Y0",
};

}  // namespace fixtures

namespace fixtures {

// Riccati case from differential elimination: a1, a0'' and b0' as printed.
inline const char* kRiccatiCaseA1 =
    "(-a0*X2*b0 - a0'*b1 + X1*b1*a0 + a0*b1')/(b1*X0)";
inline const char* kRiccatiCaseA0pp =
    "(-b1*X0*a0*X2'*b0 - 2*b1*X0*a0'*X2*b0 + b1*X0*a0*b1'' - b1*X0*X1*b1'*a0"
    " + b1^2*X0*X1*a0' + b1^2*X0*X1'*a0 - 2*b1'^2*X0*a0 + 2*X0*X2*b0*a0*b1'"
    " + 2*b1'*X0*a0'*b1 - b1*X0'*a0*b1' + b1*X0'*a0*X2*b0 + b1^2*X0'*a0'"
    " - b1^2*X0'*X1*a0)/(X0*b1^2)";
inline const char* kRiccatiCaseB0p = "(-X0*b1^2 + b1*b0*X1 - b0^2*X2 + b0*b1')/b1";

}  // namespace fixtures
