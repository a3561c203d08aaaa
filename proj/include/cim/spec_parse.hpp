#pragma once

#include "cim/fgm.hpp"
#include "cim/marginals.hpp"

#include <string>
#include <string_view>

namespace cim {

// Marginal spec: `family[:param=value,...]`, e.g. `exponential:theta=1`,
// `invweibull:theta=1,beta=2`, `logistic`. Families and their parameters:
//   exponential:theta  logistic  rayleigh:sigma  genexp:theta,lambda
//   uniform:theta      invweibull:theta,beta
// Throws ParseError (field, token, column) on malformed input and DomainError
// on out-of-range parameter values.
MarginalFamily parse_marginal(std::string_view spec);
std::string format_marginal(const MarginalFamily& m);

// GOS spec: `r=<int>,n=<int>,m=<real>,k=<real>`, or the shorthands
// `os:r=<int>,n=<int>` (m=0, k=1) and `record:r=<int>[,n=<int>]` (m=-1, k=1).
GosParams parse_gos(std::string_view spec);
// Canonical form: shorthand for order statistics and records, else the full form.
std::string format_gos(const GosParams& p);

// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace cim
