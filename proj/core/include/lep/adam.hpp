#pragma once

#include <vector>

#include "lep/params.hpp"

namespace lep::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over a ParamSet; moment accumulators are
// aligned with the set's insertion order.
class Adam {
 public:
  Adam() = default;
  Adam(const ParamSet& params, AdamConfig cfg);

  // grads[i] pairs with params.at(i); empty grads count as zero.
  void step(ParamSet& params, const std::vector<Array2>& grads);
  int steps() const { return steps_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  std::vector<Array2> m_;
  std::vector<Array2> v_;
  int steps_ = 0;
};

}  // namespace lep::nn
