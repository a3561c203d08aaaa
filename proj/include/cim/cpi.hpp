#pragma once

#include "cim/fgm.hpp"
#include "cim/inaccuracy.hpp"

#include <string_view>

namespace cim {

// Cumulative past inaccuracy I(G, F_Y) = -int G log F_Y, composed as
//   (1 + alpha C*) CE(Y) - (alpha / 2) C* CE(Y_(2:2)).
// Method is closed_form when both entropies have closed forms.
MeasureResult cpi_gos(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts = {});

// Direct quadrature of -int G log F_Y.
MeasureResult cpi_gos_quadrature(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts = {});

// Closed forms in coeff = alpha C* for uniform, exponential and inverse Weibull
// (beta > 1) marginals.
double closed_form_cpi(const MarginalFamily& m, double coeff);

// I(F_Y, G) = CE(Y) - E[U log(1 + alpha C* (1 - U)) / f(Q(U))].
MeasureResult reversed_cpi(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts = {});

enum class CpiBound { below_ce, above_ce, equal };

std::string_view to_string(CpiBound b);

// Where the CPI sits relative to CE(Y). Defined for order statistics with
// 1 <= r <= (n + 1) / 2 and for records; anything else is a DomainError.
CpiBound check_cpi_bounds(const FgmModel& model, const GosParams& p);

}  // namespace cim
