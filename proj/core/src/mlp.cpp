#include "lep/mlp.hpp"

#include <cmath>
#include <string>

#include "lep/errors.hpp"

namespace lep::nn {

namespace {
Array2 uniform_init(int rows, int cols, double bound, Rng& rng) {
  Array2 w(rows, cols);
  for (auto& x : w.data()) x = rng.uniform(-bound, bound);
  return w;
}
}  // namespace

Mlp Mlp::make(MlpConfig cfg, Rng& rng) {
  if (cfg.sizes.size() < 2) throw ContractError("Mlp: need at least [in, out] sizes");
  Mlp net;
  const int layers = static_cast<int>(cfg.sizes.size()) - 1;
  for (int l = 0; l < layers; ++l) {
    const int fan_in = cfg.sizes[l];
    const int fan_out = cfg.sizes[l + 1];
    double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    if (l == layers - 1 && cfg.final_init > 0.0) bound = cfg.final_init;
    net.params_.add("w" + std::to_string(l), uniform_init(fan_in, fan_out, bound, rng));
    net.params_.add("b" + std::to_string(l), uniform_init(1, fan_out, bound, rng));
  }
  if (cfg.tanh_output && cfg.output_scale.empty()) {
    cfg.output_scale.assign(cfg.sizes.back(), 1.0);
  }
  net.cfg_ = std::move(cfg);
  return net;
}

Mlp Mlp::from_params(MlpConfig cfg, ParamSet params) {
  const int layers = static_cast<int>(cfg.sizes.size()) - 1;
  for (int l = 0; l < layers; ++l) {
    params.require("w" + std::to_string(l), cfg.sizes[l], cfg.sizes[l + 1]);
    params.require("b" + std::to_string(l), 1, cfg.sizes[l + 1]);
  }
  if (cfg.tanh_output && cfg.output_scale.empty()) {
    cfg.output_scale.assign(cfg.sizes.back(), 1.0);
  }
  Mlp net;
  net.cfg_ = std::move(cfg);
  net.params_ = std::move(params);
  return net;
}

NodeId Mlp::forward(Tape& tape, const std::vector<NodeId>& param_nodes, NodeId x) const {
  const int layers = static_cast<int>(cfg_.sizes.size()) - 1;
  NodeId h = x;
  for (int l = 0; l < layers; ++l) {
    NodeId z = tape.add(tape.matmul(h, param_nodes[2 * l]), param_nodes[2 * l + 1]);
    if (l < layers - 1) {
      h = tape.tanh(z);
    } else if (cfg_.tanh_output) {
      NodeId t = tape.tanh(z);
      const int batch = tape.value(t).rows();
      Array2 scale_tile(batch, cfg_.sizes.back());
      for (int r = 0; r < batch; ++r)
        for (int c = 0; c < cfg_.sizes.back(); ++c) scale_tile.at(r, c) = cfg_.output_scale[c];
      h = tape.mul_elem(t, tape.input(std::move(scale_tile)));
    } else {
      h = z;
    }
  }
  return h;
}

Array2 Mlp::eval(const Array2& x) const {
  if (x.cols() != cfg_.sizes.front()) {
    throw math::ShapeError("Mlp::eval: input " + x.shape_str() + ", expected cols " +
                           std::to_string(cfg_.sizes.front()));
  }
  const int layers = static_cast<int>(cfg_.sizes.size()) - 1;
  Array2 h = x;
  for (int l = 0; l < layers; ++l) {
    const Array2& w = params_.at(2 * l);
    const Array2& b = params_.at(2 * l + 1);
    Array2 z(h.rows(), w.cols());
    math::matmul_accumulate(h, w, z);
    for (int r = 0; r < z.rows(); ++r)
      for (int c = 0; c < z.cols(); ++c) z.at(r, c) += b.at(0, c);
    if (l < layers - 1) {
      for (auto& v : z.data()) v = std::tanh(v);
    } else if (cfg_.tanh_output) {
      for (int r = 0; r < z.rows(); ++r)
        for (int c = 0; c < z.cols(); ++c) z.at(r, c) = std::tanh(z.at(r, c)) * cfg_.output_scale[c];
    }
    h = std::move(z);
  }
  return h;
}

std::vector<double> Mlp::eval_row(const std::vector<double>& x) const {
  return eval(Array2::row(x)).row_vec(0);
}

void soft_update_params(const ParamSet& online, ParamSet& target, double tau) {
  if (online.count() != target.count()) throw ContractError("soft_update: parameter count mismatch");
  for (size_t i = 0; i < online.count(); ++i) {
    const auto& src = online.at(i).data();
    auto& dst = target.at(i).data();
    for (size_t j = 0; j < dst.size(); ++j) dst[j] = tau * src[j] + (1.0 - tau) * dst[j];
  }
}

}  // namespace lep::nn
