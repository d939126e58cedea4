#include "lep/lstm.hpp"

#include <cmath>

#include "lep/errors.hpp"

namespace lep::nn {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5*log(2*pi)

Array2 uniform_init(int rows, int cols, double bound, Rng& rng) {
  Array2 w(rows, cols);
  for (auto& x : w.data()) x = rng.uniform(-bound, bound);
  return w;
}

const char* kGates = "ifog";

}  // namespace

bool LstmState::is_zero() const {
  for (double x : h)
    if (x != 0.0) return false;
  for (double x : c)
    if (x != 0.0) return false;
  return true;
}

Lstm Lstm::make(LstmDims dims, Rng& rng) {
  if (dims.input <= 0 || dims.hidden <= 0) throw ContractError("Lstm: dims must be positive");
  Lstm net;
  net.dims_ = dims;
  const double bw = 1.0 / std::sqrt(static_cast<double>(dims.input));
  const double bu = 1.0 / std::sqrt(static_cast<double>(dims.hidden));
  for (int g = 0; g < 4; ++g) {
    const std::string suffix(1, kGates[g]);
    net.params_.add("w_" + suffix, uniform_init(dims.input, dims.hidden, bw, rng));
    net.params_.add("u_" + suffix, uniform_init(dims.hidden, dims.hidden, bu, rng));
    net.params_.add("b_" + suffix, uniform_init(1, dims.hidden, bu, rng));
  }
  return net;
}

Lstm Lstm::from_params(LstmDims dims, ParamSet params) {
  for (int g = 0; g < 4; ++g) {
    const std::string suffix(1, kGates[g]);
    params.require("w_" + suffix, dims.input, dims.hidden);
    params.require("u_" + suffix, dims.hidden, dims.hidden);
    params.require("b_" + suffix, 1, dims.hidden);
  }
  Lstm net;
  net.dims_ = dims;
  net.params_ = std::move(params);
  return net;
}

Lstm::StepNodes Lstm::step(Tape& tape, const std::vector<NodeId>& pn, NodeId x, NodeId h, NodeId c) const {
  auto gate = [&](int g) {
    return tape.add(tape.add(tape.matmul(x, pn[3 * g]), tape.matmul(h, pn[3 * g + 1])), pn[3 * g + 2]);
  };
  NodeId i = tape.sigmoid(gate(0));
  NodeId f = tape.sigmoid(gate(1));
  NodeId o = tape.sigmoid(gate(2));
  NodeId g = tape.tanh(gate(3));
  NodeId c_next = tape.add(tape.mul_elem(f, c), tape.mul_elem(i, g));
  NodeId h_next = tape.mul_elem(o, tape.tanh(c_next));
  return {h_next, c_next};
}

void Lstm::eval_step(const Array2& x, Array2& h, Array2& c) const {
  if (x.cols() != dims_.input) {
    throw math::ShapeError("lstm_step: input " + x.shape_str() + ", expected cols " + std::to_string(dims_.input));
  }
  const int batch = x.rows();
  const int hd = dims_.hidden;
  Array2 acts[4];
  for (int g = 0; g < 4; ++g) {
    Array2 z(batch, hd);
    math::matmul_accumulate(x, params_.at(3 * g), z);
    math::matmul_accumulate(h, params_.at(3 * g + 1), z);
    const Array2& b = params_.at(3 * g + 2);
    for (int r = 0; r < batch; ++r)
      for (int j = 0; j < hd; ++j) z.at(r, j) += b.at(0, j);
    acts[g] = std::move(z);
  }
  for (int r = 0; r < batch; ++r) {
    for (int j = 0; j < hd; ++j) {
      const double i = 1.0 / (1.0 + std::exp(-acts[0].at(r, j)));
      const double f = 1.0 / (1.0 + std::exp(-acts[1].at(r, j)));
      const double o = 1.0 / (1.0 + std::exp(-acts[2].at(r, j)));
      const double g = std::tanh(acts[3].at(r, j));
      const double cn = f * c.at(r, j) + i * g;
      c.at(r, j) = cn;
      h.at(r, j) = o * std::tanh(cn);
    }
  }
}

void Lstm::eval_step(std::span<const double> x, LstmState& state) const {
  Array2 xr(1, dims_.input);
  std::copy(x.begin(), x.end(), xr.data().begin());
  Array2 h(1, dims_.hidden), c(1, dims_.hidden);
  std::copy(state.h.begin(), state.h.end(), h.data().begin());
  std::copy(state.c.begin(), state.c.end(), c.data().begin());
  eval_step(xr, h, c);
  state.h = h.data();
  state.c = c.data();
}

GaussianHead GaussianHead::make(int hidden, int action_dim, Rng& rng) {
  if (hidden <= 0 || action_dim <= 0) throw ContractError("GaussianHead: dims must be positive");
  GaussianHead head;
  head.hidden_ = hidden;
  head.action_dim_ = action_dim;
  const double b = 1.0 / std::sqrt(static_cast<double>(hidden));
  head.params_.add("w_mu", uniform_init(hidden, action_dim, b, rng));
  head.params_.add("b_mu", uniform_init(1, action_dim, b, rng));
  head.params_.add("w_rho", uniform_init(hidden, action_dim, b, rng));
  head.params_.add("b_rho", uniform_init(1, action_dim, b, rng));
  return head;
}

GaussianHead GaussianHead::from_params(int hidden, int action_dim, ParamSet params) {
  params.require("w_mu", hidden, action_dim);
  params.require("b_mu", 1, action_dim);
  params.require("w_rho", hidden, action_dim);
  params.require("b_rho", 1, action_dim);
  GaussianHead head;
  head.hidden_ = hidden;
  head.action_dim_ = action_dim;
  head.params_ = std::move(params);
  return head;
}

GaussianHead::OutNodes GaussianHead::forward(Tape& tape, const std::vector<NodeId>& pn, NodeId h) const {
  NodeId mu = tape.add(tape.matmul(h, pn[0]), pn[1]);
  NodeId z = tape.add(tape.matmul(h, pn[2]), pn[3]);
  NodeId squashed = tape.scale(tape.sigmoid(z), kLogStdMax - kLogStdMin);
  const int batch = tape.value(h).rows();
  NodeId lo = tape.input(Array2::full(batch, action_dim_, kLogStdMin));
  return {mu, tape.add(squashed, lo)};
}

void GaussianHead::eval(std::span<const double> h, std::vector<double>& mu, std::vector<double>& sigma) const {
  mu.assign(action_dim_, 0.0);
  sigma.assign(action_dim_, 0.0);
  Array2 hr(1, hidden_);
  std::copy(h.begin(), h.end(), hr.data().begin());
  Array2 m(1, action_dim_), z(1, action_dim_);
  math::matmul_accumulate(hr, params_.at(0), m);
  math::matmul_accumulate(hr, params_.at(2), z);
  for (int j = 0; j < action_dim_; ++j) {
    mu[j] = m.at(0, j) + params_.at(1).at(0, j);
    const double raw = z.at(0, j) + params_.at(3).at(0, j);
    const double s = 1.0 / (1.0 + std::exp(-raw));
    const double log_std = s * (kLogStdMax - kLogStdMin) + kLogStdMin;
    sigma[j] = std::exp(log_std);
  }
}

double gaussian_nll(std::span<const double> mu, std::span<const double> sigma, std::span<const double> a) {
  if (mu.size() != sigma.size() || mu.size() != a.size()) {
    throw math::ShapeError("gaussian_nll: length mismatch");
  }
  double nll = 0.0;
  for (size_t d = 0; d < mu.size(); ++d) {
    if (sigma[d] <= 0.0) throw ContractError("gaussian_nll: sigma must be positive");
    const double r = a[d] - mu[d];
    nll += kHalfLog2Pi + std::log(sigma[d]) + 0.5 * r * r / (sigma[d] * sigma[d]);
  }
  return nll;
}

NodeId gaussian_nll_node(Tape& tape, NodeId mu, NodeId log_std, const Array2& actions) {
  const Array2& m = tape.value(mu);
  if (!m.same_shape(actions) || !tape.value(log_std).same_shape(actions)) {
    throw math::ShapeError("gaussian_nll_node: mu/log_std/actions shape mismatch");
  }
  NodeId a = tape.input(actions);
  NodeId resid_sq = tape.square(tape.sub(a, mu));
  NodeId inv_var = tape.exp(tape.scale(log_std, -2.0));
  NodeId quad = tape.scale(tape.mul_elem(resid_sq, inv_var), 0.5);
  NodeId consts = tape.input(Array2::full(actions.rows(), actions.cols(), kHalfLog2Pi));
  NodeId per_dim = tape.add(tape.add(log_std, quad), consts);
  // mean over all entries x dims = mean over rows of row sums
  return tape.scale(tape.mean(per_dim), static_cast<double>(actions.cols()));
}

}  // namespace lep::nn
