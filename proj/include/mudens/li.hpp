#pragma once

namespace mudens {

// Offset logarithmic integral Li(x) = integral from 2 to x of dt/log t,
// so Li(2) = 0 and Li is strictly increasing for x > 2.
//
// Evaluated by adaptive Simpson quadrature on e^u/u after substituting
// u = log t; internals run in long double so the quadrature error stays
// below ~1e-9 through x = 1e10.
class LiEvaluator {
 public:
  explicit LiEvaluator(double abs_tol = 1e-12) : abs_tol_(abs_tol) {}
  double operator()(double x) const;

 private:
  double abs_tol_;
};

double li(double x);

}  // namespace mudens
