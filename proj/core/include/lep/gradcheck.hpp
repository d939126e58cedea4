#pragma once

#include <functional>

#include "lep/array2.hpp"

namespace lep::math {

// Central-difference comparison of an analytic gradient against the
// numeric one of f at params. Returns the max over coordinates of
// |analytic - numeric| / max(1, |numeric|); +inf if anything went
// non-finite along the way.
double finite_diff_check(const std::function<double(const Array2&)>& f, const Array2& params,
                         const Array2& analytic_grad, double eps);

}  // namespace lep::math
