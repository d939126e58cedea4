#pragma once

#include <vector>

#include "lep/params.hpp"
#include "lep/rng.hpp"

namespace lep::nn {

// Fully connected net, tanh hidden layers. Output is linear, or tanh
// scaled per-dimension by output_scale (the actor variant).
struct MlpConfig {
  std::vector<int> sizes;  // [in, h1, ..., out]
  bool tanh_output = false;
  std::vector<double> output_scale;  // per-dim, used when tanh_output
  double final_init = 0.0;           // uniform bound for last layer; 0 = fan-in rule
};

class Mlp {
 public:
  Mlp() = default;
  // Fan-in uniform init; final layer optionally in [-final_init, final_init].
  static Mlp make(MlpConfig cfg, Rng& rng);
  // Wrap existing params (e.g. loaded from file); shapes are schema-checked.
  static Mlp from_params(MlpConfig cfg, ParamSet params);

  const MlpConfig& config() const { return cfg_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }
  int input_dim() const { return cfg_.sizes.front(); }
  int output_dim() const { return cfg_.sizes.back(); }

  // Tape path for training; param_nodes must come from params().insert_all.
  NodeId forward(Tape& tape, const std::vector<NodeId>& param_nodes, NodeId x) const;

  // Forward-only path, bit-identical to the tape path.
  Array2 eval(const Array2& x) const;
  std::vector<double> eval_row(const std::vector<double>& x) const;

 private:
  MlpConfig cfg_;
  ParamSet params_;
};

// theta_target <- tau * theta + (1 - tau) * theta_target, elementwise.
void soft_update_params(const ParamSet& online, ParamSet& target, double tau);

}  // namespace lep::nn
