#include "lep/gradcheck.hpp"

#include <cmath>
#include <limits>

#include "lep/errors.hpp"

namespace lep::math {

double finite_diff_check(const std::function<double(const Array2&)>& f, const Array2& params,
                         const Array2& analytic_grad, double eps) {
  if (eps <= 0.0) throw ContractError("finite_diff_check: eps must be positive");
  check_same_shape("finite_diff_check", params, analytic_grad);
  constexpr double inf = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  Array2 p = params;
  for (int i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + eps;
    const double fp = f(p);
    p[i] = saved - eps;
    const double fm = f(p);
    p[i] = saved;
    if (!std::isfinite(fp) || !std::isfinite(fm)) return inf;
    const double numeric = (fp - fm) / (2.0 * eps);
    const double analytic = analytic_grad[i];
    if (!std::isfinite(numeric) || !std::isfinite(analytic)) return inf;
    const double rel = std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace lep::math
