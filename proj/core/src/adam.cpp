#include "lep/adam.hpp"

#include <cmath>

#include "lep/errors.hpp"

namespace lep::nn {

Adam::Adam(const ParamSet& params, AdamConfig cfg) : cfg_(cfg) {
  m_.reserve(params.count());
  v_.reserve(params.count());
  for (size_t i = 0; i < params.count(); ++i) {
    m_.emplace_back(params.at(i).rows(), params.at(i).cols());
    v_.emplace_back(params.at(i).rows(), params.at(i).cols());
  }
}

void Adam::step(ParamSet& params, const std::vector<Array2>& grads) {
  if (params.count() != m_.size() || grads.size() != m_.size()) {
    throw ContractError("Adam::step: parameter/gradient count mismatch");
  }
  ++steps_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, steps_);
  const double bc2 = 1.0 - std::pow(cfg_.beta2, steps_);
  for (size_t i = 0; i < m_.size(); ++i) {
    if (grads[i].empty()) continue;  // no gradient flow: parameter untouched
    check_same_shape("adam_step", params.at(i), grads[i]);
    auto& p = params.at(i).data();
    auto& m = m_[i].data();
    auto& v = v_[i].data();
    const auto& g = grads[i].data();
    for (size_t j = 0; j < p.size(); ++j) {
      m[j] = cfg_.beta1 * m[j] + (1.0 - cfg_.beta1) * g[j];
      v[j] = cfg_.beta2 * v[j] + (1.0 - cfg_.beta2) * g[j] * g[j];
      const double mhat = m[j] / bc1;
      const double vhat = v[j] / bc2;
      p[j] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
}

}  // namespace lep::nn
