#pragma once

#include <span>
#include <vector>

#include "lep/params.hpp"
#include "lep/rng.hpp"

namespace lep::nn {

struct LstmDims {
  int input = 0;
  int hidden = 0;
};

// Recurrent state of one sequence; zero-initialized.
struct LstmState {
  std::vector<double> h;
  std::vector<double> c;

  static LstmState zero(int hidden) { return {std::vector<double>(hidden, 0.0), std::vector<double>(hidden, 0.0)}; }
  bool is_zero() const;
};

// Single-layer LSTM. Gate parameters live in a ParamSet under the names
// w_i,u_i,b_i, w_f,u_f,b_f, w_o,u_o,b_o, w_g,u_g,b_g.
class Lstm {
 public:
  Lstm() = default;
  static Lstm make(LstmDims dims, Rng& rng);
  static Lstm from_params(LstmDims dims, ParamSet params);

  const LstmDims& dims() const { return dims_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  struct StepNodes {
    NodeId h;
    NodeId c;
  };
  // One step on the tape: gates i,f,o = sigmoid, g = tanh,
  // c' = f*c + i*g, h' = o*tanh(c'). Batched over rows.
  StepNodes step(Tape& tape, const std::vector<NodeId>& param_nodes, NodeId x, NodeId h, NodeId c) const;

  // Forward-only batched step; identical arithmetic to the tape path.
  void eval_step(const Array2& x, Array2& h, Array2& c) const;
  // Forward-only step for one sequence.
  void eval_step(std::span<const double> x, LstmState& state) const;

 private:
  LstmDims dims_;
  ParamSet params_;
};

// Linear map hidden -> (mean, log-std), with the log-std squashed
// smoothly into [kLogStdMin, kLogStdMax]. Parameter names: w_mu, b_mu,
// w_rho, b_rho.
class GaussianHead {
 public:
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;

  GaussianHead() = default;
  static GaussianHead make(int hidden, int action_dim, Rng& rng);
  static GaussianHead from_params(int hidden, int action_dim, ParamSet params);

  int hidden() const { return hidden_; }
  int action_dim() const { return action_dim_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  struct OutNodes {
    NodeId mu;
    NodeId log_std;
  };
  OutNodes forward(Tape& tape, const std::vector<NodeId>& param_nodes, NodeId h) const;

  void eval(std::span<const double> h, std::vector<double>& mu, std::vector<double>& sigma) const;

 private:
  int hidden_ = 0;
  int action_dim_ = 0;
  ParamSet params_;
};

// Negative log-likelihood of a under the diagonal Gaussian (mu, sigma),
// summed over dimensions. sigma must be strictly positive.
double gaussian_nll(std::span<const double> mu, std::span<const double> sigma, std::span<const double> a);

// Tape version: mean over batch rows of the per-row NLL, as a 1x1 node.
// actions enters as a constant input.
NodeId gaussian_nll_node(Tape& tape, NodeId mu, NodeId log_std, const Array2& actions);

}  // namespace lep::nn
