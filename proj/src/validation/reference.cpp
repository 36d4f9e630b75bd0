#include "pulseloss/reference.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pulseloss::reference {
namespace {
using big = boost::multiprecision::cpp_bin_float_50;
}

double erfc(double x) {
  return static_cast<double>(boost::math::erfc(big(x)));
}

double erfcx(double x) {
  const big b(x);
  return static_cast<double>(exp(b * b) * boost::math::erfc(b));
}

double usigma_step_skin(double t_over_tsigma) {
  const big tau = boost::math::constants::pi<big>() * big(t_over_tsigma);
  return static_cast<double>(1 - exp(tau) * boost::math::erfc(sqrt(tau)));
}

}  // namespace pulseloss::reference
