#include "billiard/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>

namespace billiard::special {

namespace {

// Double precision throughout; the default policy promotes to long double,
// which costs ~5x in the matrix assembly loops.
using FastPolicy = boost::math::policies::policy<
    boost::math::policies::promote_double<false>,
    boost::math::policies::domain_error<boost::math::policies::ignore_error>,
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>>;

}  // namespace

double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x, FastPolicy()); }

double bessel_y0(double x) { return boost::math::cyl_neumann(0, x, FastPolicy()); }

std::complex<double> hankel1_0(double x) { return {bessel_j0(x), bessel_y0(x)}; }

double bessel_j(int order, double x) { return boost::math::cyl_bessel_j(order, x, FastPolicy()); }

double bessel_y(int order, double x) { return boost::math::cyl_neumann(order, x, FastPolicy()); }

std::complex<double> hankel1(int order, double x) { return {bessel_j(order, x), bessel_y(order, x)}; }

}  // namespace billiard::special
