#pragma once

namespace rescuefx {

// Standard normal density phi(x).
double std_pdf(double x);

// Standard normal CDF Phi(x), computed through erfc so the lower tail keeps
// full relative precision (|error| <= 1e-14 absolute across [-8, 8]).
double std_cdf(double x);

// Inverse Mills ratio lambda(x) = phi(x) / (1 - Phi(x)).
// Direct ratio below x = 6; Laplace continued fraction beyond, so the value
// stays finite and accurate far past the point where 1 - Phi(x) underflows.
double hazard(double x);

// Moments of X ~ N(mu, sigma^2) conditioned on X > c.
struct TruncatedMoments {
    double mean;
    double second_moment;
    double variance;
};

TruncatedMoments truncated_moments(double mu, double sigma, double c);

// Regression coefficient and residual scale of Y2 | Y1 for a bivariate
// normal with sd(Y1) = sigma11, sd(Y2) = sigma22, cov = sigma12.
struct SlopeResidual {
    double slope;        // sigma12 / sigma11^2
    double residual_sd;  // sqrt(sigma22^2 - sigma12^2 / sigma11^2)
};

SlopeResidual conditional_slope_and_residual(double sigma11, double sigma12,
                                             double sigma22);

} // namespace rescuefx
