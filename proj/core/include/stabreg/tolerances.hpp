#pragma once

namespace stabreg::tol {

// Central numeric tolerances. Call sites take these as defaulted parameters so
// a configuration can override any of them per run.

inline constexpr double kMembership = 1e-9;       // domain membership (sum/norm residual)
inline constexpr double kBisection = 1e-10;       // constraint residual of 1-D multiplier solves
inline constexpr double kStationarity = 1e-8;     // first-order residual of mirror steps
inline constexpr double kOracleGap = 1e-12;       // certified objective gap of oracle minimizers
inline constexpr double kCheckSlack = 1e-6;       // additive slack of trace-level lemma checks
inline constexpr double kPropertySlack = 1e-9;    // additive slack of sampled property checks
inline constexpr double kTightRel = 1e-12;        // relative slack of exact algebraic identities
inline constexpr double kContractionSlack = 1.01; // multiplicative slack of per-step contractions

}  // namespace stabreg::tol
