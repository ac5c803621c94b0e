#pragma once

#include <functional>

#include "gqed/types.hpp"

namespace gqed {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 50;
  double truncation_epsilon = 1e-10;
  // Subdivision levels forced before an interval may be accepted; raises the
  // sampling density so narrow features inside wide panels are not skipped.
  int min_depth = 0;

  void validate() const;
};

/// Complex-valued adaptive Simpson integration of f over [a, b].
Complex adaptive_integrate(const std::function<Complex(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Golden-section argmax of a unimodal function on [a, b].
double maximize_unimodal(const std::function<double(double)>& f, double a, double b,
                         double xtol = 1e-10);

}  // namespace gqed
