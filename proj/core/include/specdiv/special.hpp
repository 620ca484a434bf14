#pragma once

namespace specdiv {

/// Gamma via a fixed 9-term Lanczos approximation (g = 7), with the
/// reflection formula below 1/2. Relative error <= 1e-12 on [1/2, 30].
double gamma_lanczos(double x);

/// Gamma(k/2) by the exact recurrence from Gamma(1/2) = sqrt(pi) and
/// Gamma(1) = 1; independent cross-check path for half-integer arguments.
double gamma_half_integer(int twice_x);

struct HypergeometricValue {
    double value = 0;
    double error_bound = 0;
};

/// Gauss 2F1(a,b;c;z) for 0 <= z <= 1. For z < 1: partial sums, stopping
/// once the term ratio falls below (1+z)/2 and the geometric tail majorant
/// drops under tol. At z = 1: the Gauss summation formula, which requires
/// c - a - b > 0.
HypergeometricValue gauss_hypergeometric(double a, double b, double c, double z,
                                         double tol = 1e-12);

}  // namespace specdiv
