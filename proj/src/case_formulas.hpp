#pragma once

// Assignments and conditions of the four case families, transcribed once.
// Names X0..X4, Y0..Y2 are the ODE coefficients; primes are x-derivatives.

namespace ratode::formulas {

// a1 :=
inline constexpr const char* kRiccatiA1 =
    "(-a0*X2*b0-a0'*b1+X1*b1*a0+a0*b1')/(b1*X0)";

// a0'' :=
inline constexpr const char* kRiccatiA0pp =
    "(-b1*X0*a0*X2'*b0-2*b1*X0*a0'*X2*b0+b1*X0*a0*b1''-b1*X0*X1*b1'*a0+b1^2*X0*X1*a0'"
    "+b1^2*X0*X1'*a0-2*(b1')^2*X0*a0+2*X0*X2*b0*a0*b1'+2*b1'*X0*a0'*b1-b1*X0'*a0*b1'"
    "+b1*X0'*a0*X2*b0+b1^2*X0'*a0'-b1^2*X0'*X1*a0)/(X0*b1^2)";

// b0' :=
inline constexpr const char* kRiccatiB0p =
    "(-X0*b1^2+b1*b0*X1-b0^2*X2+b0*b1')/b1";

// b2 :=
inline constexpr const char* kAbelB2 =
    "(-X0^2*Y1^4+Y1^3*X0*X1*Y0-Y1^3*Y0*X0*Y0'+Y1^2*Y0'*Y0^2*X1+Y1^2*Y0^2*X0*Y1'"
    "-Y1*Y1'*Y0^3*X1-Y1*X1*X2*Y0^3-Y1*Y0'*X2*Y0^3+X2^2*Y0^4+Y1'*X2*Y0^4)/("
    "-4*Y1^2*Y0'*X2*Y0+Y1*(Y1')^2*Y0^2+4*Y1*X2^2*Y0^2-4*Y1^2*X2*Y0*X1+Y1^3*X1^2"
    "-2*Y1^2*Y0'*Y1'*Y0+4*Y1*X2*Y0^2*Y1'-2*Y1^2*Y1'*Y0*X1+Y1^3*(Y0')^2+2*Y1^3*Y0'*X1)";

// b1' :=
inline constexpr const char* kAbelB1p =
    "(-Y1*X0*Y1'+Y1*X1*Y0'+Y1*X1^2-2*Y1*X0*X2-X1*Y0*X2-Y0*X2*Y0')/(Y1^2*X0+Y0^2*X2"
    "-Y1*X1*Y0)";

// a2 :=
inline constexpr const char* kAbelA2 =
    "(-Y1^2*X0-Y0^2*X2+Y1*X1*Y0)/(-Y1'*Y0+Y1*Y0'+X1*Y1-2*X2*Y0)";

// a1 :=
inline constexpr const char* kAbelA1 =
    "(2*X2*Y1*Y0+Y1*Y1'*Y0-Y1^2*X1-Y1^2*Y0')/(Y1^2*X0+Y0^2*X2-Y1*X1*Y0)";

// Y0'' :=
inline constexpr const char* kAbelY0pp =
    "(Y1^2*X1*Y0^2*X2'+Y1*Y0^3*X2'*Y1'+3*Y1*Y0^2*X2^2*Y0'+Y1^3*X0'*Y1'*Y0-Y1^3*X0*X2*Y0'"
    "-Y1^3*X0*Y0'*Y1'+Y1^3*X1'*Y0*Y0'-Y1^2*X1^2*Y0*Y1'-Y1^2*X1'*Y0^2*Y1'"
    "-Y1^2*Y0^2*X2*X1'+Y1^2*X0*(Y1')^2*Y0-Y1^2*Y0^2*X2'*Y0'-2*Y1^2*Y0*X2*(Y0')^2"
    "-2*X2^3*Y0^3+X2*X0*X1*Y1^3+3*X2^2*Y0^2*X1*Y1-Y1^2*X2*X1^2*Y0-2*Y1^2*X2^2*X0*Y0"
    "-Y1^2*X1*Y0*Y0'*Y1'+Y1^2*X0*X2*Y1'*Y0-3*Y1^2*X1*Y0*X2*Y0'+3*Y1*Y0^2*X2*Y0'*Y1'"
    "-2*Y1^3*X0*X2'*Y0+2*Y1^3*X0'*X2*Y0-Y1*Y0^3*X2*Y1''+3*Y1*Y0^2*X2*X1*Y1'"
    "-Y1^3*X0*Y1''*Y0+Y1^2*X1*Y0^2*Y1''-Y0^3*X2*(Y1')^2-3*Y0^3*X2^2*Y1'+Y1^3*X1^2*Y0'"
    "+Y1^3*X1*(Y0')^2-Y1^4*Y0'*X0'-Y1^4*X0'*X1+Y1^4*X0*X1')/(-Y1^4*X0-Y1^2*Y0^2*X2"
    "+Y1^3*X1*Y0)";

// a1 :=
inline constexpr const char* kUc1A1 =
    "Y2/b2";

// b1 :=
inline constexpr const char* kUc1B1 =
    "(2*b0*Y2+2*b2*Y0)/Y1";

// a0 :=
inline constexpr const char* kUc1A0 =
    "Y1/(2*b2)";

// b0' :=
inline constexpr const char* kUc1B0p =
    "-1/2*(4*X0*b0*Y2+4*X0*Y0*b2-b0*Y1*X1-b0*Y1*Y0')/(Y1*Y0)";

// b2' :=
inline constexpr const char* kUc1B2p =
    "(-4*Y2*b2*Y0*X1+4*Y2*b2*Y1*X0+4*Y2*b2*Y0*Y0'-b2*Y1^2*Y0'-8*X3*b2*Y0^2-b2*Y1^2*X1"
    "+4*b2*Y1*Y0*X2)/(-2*Y1^2*Y0+8*Y0^2*Y2)";

// Y2' :=
inline constexpr const char* kUc1Y2p =
    "(-Y1^2*Y0*X3-Y1^2*X1*Y2-Y1^2*Y0'*Y2+4*Y1*Y2^2*X0+4*Y1*Y0*Y2*X2-4*Y0*Y2^2*X1"
    "+4*Y0*Y2^2*Y0'-4*Y2*Y0^2*X3)/(4*Y0^2*Y2-Y1^2*Y0)";

// Y1' :=
inline constexpr const char* kUc1Y1p =
    "(-8*X0*Y0*Y2^2+4*Y2*X0*Y1^2+4*Y2*Y0'*Y1*Y0-Y1^3*X1-Y1^3*Y0'+2*Y0*Y1^2*X2"
    "-4*X3*Y1*Y0^2)/(4*Y0^2*Y2-Y1^2*Y0)";

// a1 :=
inline constexpr const char* kUc2A1 =
    "(Y1^2*a2*Y0'*Y2-2*Y1^2*Y0*Y2*a2'+Y1^2*a2*X1*Y2-4*Y1*a2*X0*Y2^2-4*Y0^2*a2*X4*Y1"
    "-4*Y1*Y2*Y0*a2*X2+8*Y2^2*Y0^2*a2'+4*Y2^2*Y0*a2*X1+8*Y2*a2*X3*Y0^2"
    "-4*Y2^2*Y0*a2*Y0')/(8*Y0^2*X4*Y2-2*Y0*X4*Y1^2)";

// b1 :=
inline constexpr const char* kUc2B1 =
    "(4*Y2^2*Y0*a2*b2*X1+Y1^2*Y2*b2*a2*X1+Y1^2*Y2*a2*b2*Y0'+2*Y2*Y0*X4*Y1^2"
    "-2*Y1^2*Y2*Y0*b2*a2'+8*Y2^2*Y0^2*b2*a2'-4*Y1*Y0^2*X4*a2*b2-4*Y1*b2*Y2^2*a2*X0"
    "-4*Y1*Y2*Y0*b2*a2*X2-8*Y2^2*Y0^2*X4-4*Y2^2*Y0*a2*b2*Y0'+8*Y2*a2*b2*X3*Y0^2)/("
    "-2*Y0*a2*X4*Y1^2+8*Y0^2*a2*X4*Y2)";

// a0 :=
inline constexpr const char* kUc2A0 =
    "(Y1^3*a2*Y0'+8*Y2*Y0^2*a2'*Y1+4*Y2*Y0*a2*Y1*X1-4*Y2*Y0*Y1*a2*Y0'-4*Y2*Y1^2*a2*X0"
    "-16*a2*X4*Y0^3+8*a2*X3*Y1*Y0^2-4*Y0*a2*Y1^2*X2-2*Y0*Y1^3*a2'"
    "+a2*Y1^3*X1)/(16*Y0^2*X4*Y2-4*Y0*X4*Y1^2)";

// b0 :=
inline constexpr const char* kUc2B0 =
    "(Y1^3*a2*b2*Y0'-4*Y2*Y0*Y1*a2*b2*Y0'+8*Y2*Y0^2*b2*a2'*Y1-8*Y2*Y1*Y0^2*X4"
    "+4*Y2*Y0*a2*Y1*b2*X1-4*Y0*b2*a2*Y1^2*X2-4*Y2*Y1^2*b2*a2*X0-16*a2*b2*X4*Y0^3"
    "+8*a2*b2*X3*Y1*Y0^2+2*Y0*Y1^3*X4-2*Y0*b2*Y1^3*a2'+b2*a2*Y1^3*X1)/(-4*Y0*a2*X4*Y1^2"
    "+16*Y0^2*a2*X4*Y2)";

// b2' :=
inline constexpr const char* kUc2B2p =
    "-(-a2'*b2+X4)/a2";

// a2'' :=
inline constexpr const char* kUc2A2pp =
    "(8*a2*Y0*X4*X0*X3*Y1+8*Y2*a2*Y0^2*X1*X4'-2*a2*Y0*X4*Y1^2*X1'-8*a2*Y0^2*Y1*X2*X4'"
    "+8*a2*Y0^2*Y1*X4*X2'+2*a2*Y0*Y1^2*X4'*Y0'+2*a2*Y0*Y1^2*X4'*X1+4*Y2*a2*Y0*X1^2*X4"
    "-16*a2*Y0^2*X4^2*X0-16*a2*Y0^3*X4*X3'-a2*X4*Y1^2*X1^2+a2*X4*(Y0')^2*Y1^2"
    "-16*X4*X0^2*a2*Y2^2-16*Y2*a2*Y0*X4*X0*X2+8*Y2*a2*X4*X1*X0*Y1+16*Y2*Y0^3*a2'*X4'"
    "-4*Y0^2*Y1^2*X4'*a2'+16*a2*Y0^3*X3*X4'-8*Y2*a2*Y0^2*X4*X1'+8*Y2*a2*Y0*Y1*X4*X0'"
    "-4*Y2*a2*Y0*X4*(Y0')^2-8*Y2*a2*Y0^2*Y0'*X4'-2*a2*Y0*X4*Y1^2*Y0''"
    "+8*Y2*a2*Y0^2*X4*Y0''-8*Y2*a2*Y0*Y1*X0*X4')/(-4*Y1^2*Y0^2*X4+16*Y0^3*X4*Y2)";

// Y2' :=
inline constexpr const char* kUc2Y2p =
    "(-Y1^2*Y0*X3-Y1^2*X1*Y2-Y1^2*Y0'*Y2+4*Y1*Y0*Y2*X2+4*Y1*Y0^2*X4+4*Y1*Y2^2*X0"
    "-4*Y0*Y2^2*X1+4*Y0*Y2^2*Y0'-4*Y2*Y0^2*X3)/(4*Y0^2*Y2-Y1^2*Y0)";

// Y1' :=
inline constexpr const char* kUc2Y1p =
    "(8*X0*Y0*Y2^2-4*Y2*Y0'*Y1*Y0-4*Y2*X0*Y1^2-8*X4*Y0^3+4*X3*Y1*Y0^2-2*Y0*Y1^2*X2"
    "+Y1^3*X1+Y1^3*Y0')/(-4*Y0^2*Y2+Y1^2*Y0)";

}  // namespace ratode::formulas
