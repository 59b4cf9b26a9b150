#pragma once

// Numeric contracts shared by the library, the batch runner and the
// acceptance suite. Everything is pinned here; configs may choose sample
// sizes and horizons but never loosen a tolerance.

namespace peakdomain::contracts {

// cocycle / section
inline constexpr double kIdentityRelTol = 1e-9;       // phi_{n+k} = phi_n + phi_k o f^n
inline constexpr double kSectionMetricTol = 1e-9;     // pi(f^k x) vs pi(x) on NS
inline constexpr double kShiftRelationTol = 1e-9;     // Phi(x) = Phi(f^k x) + phi_k(x)
inline constexpr double kMomentSolveTol = 1e-12;      // separating observable moments

// hopf
inline constexpr double kWilsonZ = 1.959963984540054; // 95% two-sided
inline constexpr double kWilsonWidthMax = 0.02;       // NS volume CI width
inline constexpr double kIntegralBoundTol = 1e-3;     // sum integral <= 1 + tol
inline constexpr double kIntervalContactTol = 1e-12;  // hairline-contact slack
inline constexpr double kRecurrenceMinFraction = 0.99;
inline constexpr double kDensityMinFraction = 0.99;

// birkhoff
inline constexpr double kObstructionMinFraction = 0.95;
inline constexpr double kSpliceFreqTol = 0.08;        // window frequency vs p

// entropy
inline constexpr int kMaxWindowLen = 28;
inline constexpr int kBruteForceWindowCap = 24;
inline constexpr double kFullShiftSlopeTol = 0.02;    // |slope - ln 2|
inline constexpr double kResolutionStabilityTol = 0.01;
inline constexpr double kBandEntropyTol = 0.08;       // (1/n) log count vs H(p)
inline constexpr double kUnionMaxTol = 0.03;
inline constexpr double kAsymmetryMinGap = 0.2;       // (0.5, 0.1) pair
inline constexpr double kSymmetricAgreeTol = 0.05;    // p = q pair

}  // namespace peakdomain::contracts
