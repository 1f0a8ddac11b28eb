#include "sweep.hpp"

#include <boost/math/special_functions/jacobi_elliptic.hpp>

namespace lagtori::testing {

double boost_conformal_factor(const MironovTorus& t, double x) {
  const auto& d = t.constants();
  const double a1 = t.point().a1, a2 = t.point().a2;
  const double sn = boost::math::jacobi_sn(std::sqrt((a1 - a2) / (a1 + d.a3)), std::sqrt(a1 + d.a3) * x);
  return a1 - (a1 - a2) * sn * sn;
}

}  // namespace lagtori::testing
