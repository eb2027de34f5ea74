#pragma once

namespace gmeef {

// Gamma function via the Lanczos approximation (g = 7, 9 terms) with the
// reflection formula below 1/2. Relative error < 1e-13 on (0, 50].
// Throws ParameterError for non-positive integers and non-finite input.
double lanczos_gamma(double x);

}  // namespace gmeef
