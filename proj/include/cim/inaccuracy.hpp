#pragma once

#include "cim/fgm.hpp"
#include "cim/marginals.hpp"
#include "cim/numerics.hpp"

#include <string_view>

namespace cim {

enum class Method { closed_form, quadrature, quantile_form };

std::string_view to_string(Method m);

struct MeasureResult {
    double value = 0.0;
    Method method = Method::closed_form;
    double abs_error_estimate = 0.0;  // zero for closed forms
};

// I(g, f_Y) = -int g log f_Y for the r-th GOS concomitant, composed as
//   (1 + alpha C*) H(Y) + 2 alpha C* phi_f.
MeasureResult inaccuracy_gos(const FgmModel& model, const GosParams& p);

// Same measure by direct quadrature of -int g log f_Y.
MeasureResult inaccuracy_gos_quadrature(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts = {});

// Family-specific closed forms in terms of coeff = alpha C*. Available for
// exponential, logistic, rayleigh and generalized exponential marginals;
// other families raise UnsupportedConfiguration.
double closed_form_inaccuracy(const MarginalFamily& m, double coeff);

// I(f_Y, g) = H(Y) - E log(1 + alpha C* (1 - 2U)),  U ~ U(0, 1).
MeasureResult reversed_inaccuracy(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts = {});

// E log q(U) + alpha C* E[(1 - 2U) log q(U)] with q(u) = 1 / f_Y(Q(u)).
MeasureResult quantile_form_inaccuracy(const FgmModel& model, const GosParams& p,
                                       const QuadratureOptions& opts = {});

// Inaccuracy of the concomitants of the sample minimum / maximum when the
// pairs carry their own association parameters.
MeasureResult extremes_inaccuracy(const MarginalFamily& marginal_y, const HeterogeneousAlphas& alphas, Extreme which);

}  // namespace cim
