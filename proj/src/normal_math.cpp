#include "rescuefx/normal_math.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rescuefx/errors.hpp"

namespace rescuefx {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw domain_error(std::string(what) + " must be finite");
}

} // namespace

double std_pdf(double x) {
    require_finite(x, "std_pdf argument");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_cdf(double x) {
    require_finite(x, "std_cdf argument");
    // erfc keeps the lower tail accurate where 1 - erf would cancel.
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double hazard(double x) {
    require_finite(x, "hazard argument");
    if (x < 6.0) {
        // upper tail via erfc: 1 - Phi(x) = erfc(x / sqrt 2) / 2
        return std_pdf(x) / (0.5 * std::erfc(x * kInvSqrt2));
    }
    // Laplace continued fraction lambda(x) = x + 1/(x + 2/(x + 3/(...))),
    // evaluated bottom-up. 64 levels is far below round-off at x >= 6 and
    // the result stays finite for arbitrarily large x.
    double f = 0.0;
    for (int k = 64; k >= 1; --k) f = static_cast<double>(k) / (x + f);
    return x + f;
}

TruncatedMoments truncated_moments(double mu, double sigma, double c) {
    require_finite(mu, "truncated_moments mu");
    require_finite(c, "truncated_moments c");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw domain_error("truncated_moments requires sigma > 0");

    const double eta = (c - mu) / sigma;
    const double lam = hazard(eta);

    TruncatedMoments out;
    out.mean = mu + sigma * lam;
    out.second_moment = mu * mu + sigma * (sigma + (c + mu) * lam);
    out.variance = sigma * sigma * (1.0 + lam * (eta - lam));
    return out;
}

SlopeResidual conditional_slope_and_residual(double sigma11, double sigma12,
                                             double sigma22) {
    if (!(sigma11 > 0.0) || !std::isfinite(sigma11))
        throw domain_error("conditional_slope_and_residual requires sigma11 > 0");
    if (!(sigma22 > 0.0) || !std::isfinite(sigma22))
        throw domain_error("conditional_slope_and_residual requires sigma22 > 0");
    require_finite(sigma12, "conditional_slope_and_residual sigma12");
    const double resid_var = sigma22 * sigma22 - (sigma12 * sigma12) / (sigma11 * sigma11);
    if (!(resid_var > 0.0))
        throw domain_error("conditional_slope_and_residual: |sigma12| must be "
                           "< sigma11 * sigma22 (non-PD covariance)");
    SlopeResidual out;
    out.slope = sigma12 / (sigma11 * sigma11);
    out.residual_sd = std::sqrt(resid_var);
    return out;
}

} // namespace rescuefx
