#pragma once

namespace pulseloss::reference {

/// erfc and exp(x^2) erfc(x) evaluated with 50 decimal digits
/// (Boost.Multiprecision), rounded to double. Test oracles only.
double erfc(double x);
double erfcx(double x);

/// 1 - exp(tau) erfc(sqrt(tau)) in 50 digits.
double usigma_step_skin(double t_over_tsigma);

}  // namespace pulseloss::reference
