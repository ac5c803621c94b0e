#include "gqed/quadrature.hpp"

#include <cmath>

namespace gqed {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(truncation_epsilon > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_depth < 10) throw std::invalid_argument("max_depth must be at least 10");
  if (min_depth < 0 || min_depth > max_depth)
    throw std::invalid_argument("min_depth must lie in [0, max_depth]");
}

namespace {

struct SimpsonState {
  const std::function<Complex(double)>& f;
  double eps;
  int max_depth;
  int min_depth;
};

Complex simpson(const Complex& fa, const Complex& fm, const Complex& fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

Complex refine(const SimpsonState& s, double a, double b, Complex fa, Complex fm, Complex fb,
               Complex whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Complex flm = s.f(lm);
  const Complex frm = s.f(rm);
  const Complex left = simpson(fa, flm, fm, m - a);
  const Complex right = simpson(fm, frm, fb, b - m);
  const Complex split = left + right;

  if (depth >= s.min_depth && std::abs(split - whole) <= 15.0 * eps)
    return split + (split - whole) / 15.0;
  if (depth >= s.max_depth)
    throw ScatteringError(ErrorCode::MaxDepthExceeded,
                          "adaptive_integrate: interval did not converge");
  const double half_eps = 0.5 * eps;
  return refine(s, a, m, fa, flm, fm, left, half_eps, depth + 1) +
         refine(s, m, b, fm, frm, fb, right, half_eps, depth + 1);
}

Complex run_adaptive(const std::function<Complex(double)>& f, double a, double b, double eps,
                     const QuadratureSpec& spec) {
  const Complex fa = f(a);
  const Complex fm = f(0.5 * (a + b));
  const Complex fb = f(b);
  const SimpsonState state{f, eps, spec.max_depth, spec.min_depth};
  return refine(state, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), eps, 0);
}

}  // namespace

Complex adaptive_integrate(const std::function<Complex(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {0.0, 0.0};
  if (a > b) return -adaptive_integrate(f, b, a, spec);

  // Coarse composite pass to set the error budget scale.
  constexpr int kCoarsePanels = 64;
  const double h = (b - a) / kCoarsePanels;
  Complex coarse = 0.0;
  Complex prev = f(a);
  for (int i = 0; i < kCoarsePanels; ++i) {
    const double lo = a + i * h;
    const Complex mid = f(lo + 0.5 * h);
    const Complex next = f(lo + h);
    coarse += simpson(prev, mid, next, h);
    prev = next;
  }

  double eps = std::max(spec.abs_tol, spec.rel_tol * std::abs(coarse));
  Complex result = run_adaptive(f, a, b, eps, spec);
  // When the coarse pass overestimated the magnitude (oscillatory
  // cancellation), rerun once with the budget taken from the result itself.
  const double tighter = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
  if (tighter < 0.25 * eps) result = run_adaptive(f, a, b, tighter, spec);
  return result;
}

double maximize_unimodal(const std::function<double(double)>& f, double a, double b,
                         double xtol) {
  if (!(a < b)) throw std::invalid_argument("maximize_unimodal: need a < b");
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace gqed
