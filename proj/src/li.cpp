#include "mudens/li.hpp"

#include <cmath>
#include <stdexcept>

namespace mudens {

namespace {

long double integrand(long double u) { return std::exp(u) / u; }

long double simpson(long double a, long double m, long double b, long double fa,
                    long double fm, long double fb) {
  (void)m;
  return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

long double adapt(long double a, long double b, long double fa, long double fm,
                  long double fb, long double whole, long double tol, int depth) {
  const long double m = 0.5L * (a + b);
  const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
  const long double flm = integrand(lm), frm = integrand(rm);
  const long double left = simpson(a, lm, m, fa, flm, fm);
  const long double right = simpson(m, rm, b, fm, frm, fb);
  const long double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0L * tol)
    return left + right + delta / 15.0L;
  return adapt(a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
         adapt(m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

}  // namespace

double LiEvaluator::operator()(double x) const {
  if (x < 2.0) throw std::domain_error("li: x must be >= 2");
  if (x == 2.0) return 0.0;
  const long double a = std::log(2.0L);
  const long double b = std::log(static_cast<long double>(x));
  const long double fa = integrand(a), fb = integrand(b);
  const long double m = 0.5L * (a + b);
  const long double fm = integrand(m);
  const long double whole = simpson(a, m, b, fa, fm, fb);
  return static_cast<double>(
      adapt(a, b, fa, fm, fb, whole, static_cast<long double>(abs_tol_), 60));
}

double li(double x) {
  static const LiEvaluator eval;
  return eval(x);
}

}  // namespace mudens
