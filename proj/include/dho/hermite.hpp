#pragma once

#include <vector>

#include "dho/core.hpp"

namespace dho {

/// Orthonormal Hermite function h_n(u) = (2^n n! sqrt(pi))^{-1/2} e^{-u^2/2} H_n(u).
///
/// Evaluated with the normalized three-term recurrence
///   h_{k+1} = u sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1},  h_0 = pi^{-1/4} e^{-u^2/2},
/// with the Gaussian factor carried separately as a logarithm so neither the
/// seed underflows nor the forbidden-region growth overflows (n <= 1e6, |u| <= 60).
double hermite_function(int n, double u);

/// h_0(u) .. h_{n_max}(u) in one pass.
std::vector<double> hermite_functions(int n_max, double u);

/// log of sqrt((2m-1)!!/(2m)!!), with (-1)!! = 0!! = 1.
double log_double_factorial_ratio_sqrt(int m);

/// Large-n form of the pseudostationary state n at (q, t).
///
/// With m = floor(n/2) and s = e^{alpha t}:
///   (wt/pi)^{1/4} e^{-i alpha q^2 s^2 / 2} (-1)^m sqrt((2m-1)!!/(2m)!!)
///     * cos(sqrt((4m+1) wt) s q)   for even n,
///     * sin(sqrt((4m+3) wt) s q)   for odd n.
/// The form has no Gaussian decay and is only meaningful on a compact window.
cplx asymptotic_pseudostationary(int n, double q, double t, const OscillatorParams& params);

}  // namespace dho
