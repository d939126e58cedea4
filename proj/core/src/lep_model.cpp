#include "lep/lep_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lep/errors.hpp"

namespace lep::explore {

using math::Array2;
using math::NodeId;
using math::Tape;

SubsequenceDataset SubsequenceDataset::build(std::shared_ptr<const std::vector<Trajectory>> trajectories,
                                             int h, int count, Rng& rng) {
  if (h < 1) throw ContractError("SubsequenceDataset: h must be positive");
  if (count < 1) throw ContractError("SubsequenceDataset: count must be positive");
  if (!trajectories || trajectories->empty()) throw ContractError("SubsequenceDataset: no trajectories");
  for (const auto& t : *trajectories) {
    if (t.length() < h) {
      throw ContractError("SubsequenceDataset: trajectory (task " + t.task_id + ", instance " +
                          std::to_string(t.instance_id) + ") has length " + std::to_string(t.length()) +
                          " < h=" + std::to_string(h));
    }
  }
  SubsequenceDataset ds;
  ds.trajectories_ = std::move(trajectories);
  ds.h_ = h;
  ds.state_dim_ = ds.trajectories_->front().state_dim();
  ds.action_dim_ = ds.trajectories_->front().action_dim();
  ds.windows_.reserve(count);
  const size_t n_traj = ds.trajectories_->size();
  for (int i = 0; i < count; ++i) {
    const int traj = static_cast<int>(rng.uniform_index(n_traj));
    const int max_start = (*ds.trajectories_)[traj].length() - h;  // inclusive
    const int start = static_cast<int>(rng.uniform_index(static_cast<size_t>(max_start) + 1));
    ds.windows_.push_back({traj, start});
  }
  ds.compute_stats();
  return ds;
}

void SubsequenceDataset::compute_stats() {
  norm_mean_.assign(state_dim_, 0.0);
  norm_std_.assign(state_dim_, 0.0);
  size_t n = 0;
  for (const auto& w : windows_) {
    const Trajectory& t = (*trajectories_)[w.trajectory];
    for (int r = w.start; r < w.start + h_; ++r) {
      for (int c = 0; c < state_dim_; ++c) norm_mean_[c] += t.states.at(r, c);
      ++n;
    }
  }
  for (auto& m : norm_mean_) m /= static_cast<double>(n);
  for (const auto& w : windows_) {
    const Trajectory& t = (*trajectories_)[w.trajectory];
    for (int r = w.start; r < w.start + h_; ++r) {
      for (int c = 0; c < state_dim_; ++c) {
        const double d = t.states.at(r, c) - norm_mean_[c];
        norm_std_[c] += d * d;
      }
    }
  }
  for (auto& s : norm_std_) s = std::max(std::sqrt(s / static_cast<double>(n)), 1e-6);
}

SubsequenceDataset SubsequenceDataset::split_holdout(double fraction, Rng& rng) {
  if (fraction <= 0.0 || fraction >= 1.0) throw ContractError("split_holdout: fraction in (0,1)");
  std::vector<int> order(windows_.size());
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  const size_t n_hold = std::max<size_t>(1, static_cast<size_t>(fraction * windows_.size()));

  SubsequenceDataset holdout;
  holdout.trajectories_ = trajectories_;
  holdout.h_ = h_;
  holdout.state_dim_ = state_dim_;
  holdout.action_dim_ = action_dim_;
  std::vector<WindowRef> keep;
  keep.reserve(windows_.size() - n_hold);
  for (size_t i = 0; i < order.size(); ++i) {
    if (i < n_hold) holdout.windows_.push_back(windows_[order[i]]);
    else keep.push_back(windows_[order[i]]);
  }
  windows_ = std::move(keep);
  compute_stats();  // training stats exclude the holdout
  holdout.norm_mean_ = norm_mean_;
  holdout.norm_std_ = norm_std_;
  return holdout;
}

GaussianSequenceModel GaussianSequenceModel::make(int state_dim, int action_dim, int hidden, int h,
                                                  uint64_t seed) {
  if (h < 1) throw ContractError("GaussianSequenceModel: h must be positive");
  GaussianSequenceModel m;
  Rng rng(Rng::derive(seed, 0x1e9, hidden, h));
  m.lstm_ = nn::Lstm::make({state_dim, hidden}, rng);
  m.head_ = nn::GaussianHead::make(hidden, action_dim, rng);
  m.state_dim_ = state_dim;
  m.h_ = h;
  m.norm_mean_.assign(state_dim, 0.0);
  m.norm_std_.assign(state_dim, 1.0);
  return m;
}

void GaussianSequenceModel::set_normalization(std::vector<double> mean, std::vector<double> std) {
  if (static_cast<int>(mean.size()) != state_dim_ || static_cast<int>(std.size()) != state_dim_) {
    throw ContractError("set_normalization: dim mismatch");
  }
  for (double s : std)
    if (s <= 0.0) throw ContractError("set_normalization: std must be positive");
  norm_mean_ = std::move(mean);
  norm_std_ = std::move(std);
}

std::vector<double> GaussianSequenceModel::normalize(const std::vector<double>& state) const {
  std::vector<double> out(state.size());
  for (size_t i = 0; i < state.size(); ++i) out[i] = (state[i] - norm_mean_[i]) / norm_std_[i];
  return out;
}

namespace {

// Gathers the batch's state/action rows for window step t.
void gather_step(const SubsequenceDataset& data, const std::vector<int>& batch_idx, int t, Array2& states,
                 Array2& actions) {
  const auto& mean = data.norm_mean();
  const auto& stdv = data.norm_std();
  for (size_t b = 0; b < batch_idx.size(); ++b) {
    const auto& w = data.window(batch_idx[b]);
    const Trajectory& traj = data.trajectory_of(w);
    const int r = w.start + t;
    for (int c = 0; c < data.state_dim(); ++c) {
      states.at(static_cast<int>(b), c) = (traj.states.at(r, c) - mean[c]) / stdv[c];
    }
    for (int c = 0; c < data.action_dim(); ++c) {
      actions.at(static_cast<int>(b), c) = traj.actions.at(r, c);
    }
  }
}

}  // namespace

std::vector<double> train_lep(const SubsequenceDataset& data, GaussianSequenceModel& model,
                              const LepTrainConfig& cfg, Rng& rng) {
  if (data.size() == 0) throw ContractError("train_lep: empty dataset");
  if (data.state_dim() != model.state_dim() || data.action_dim() != model.action_dim()) {
    throw ContractError("train_lep: dataset dims do not match model");
  }
  model.set_normalization(data.norm_mean(), data.norm_std());

  // one optimizer over lstm+head parameters, in insertion order
  nn::ParamSet& lstm_p = model.lstm().params();
  nn::ParamSet& head_p = model.head().params();
  const size_t n_lstm = lstm_p.count();
  const size_t n_total = n_lstm + head_p.count();
  nn::AdamConfig adam_cfg;
  adam_cfg.lr = cfg.lr;

  // combined view for Adam: moments tracked across both sets
  nn::ParamSet combined;
  for (size_t i = 0; i < lstm_p.count(); ++i) combined.add("lstm." + lstm_p.name(i), lstm_p.at(i));
  for (size_t i = 0; i < head_p.count(); ++i) combined.add("head." + head_p.name(i), head_p.at(i));
  nn::Adam adam(combined, adam_cfg);

  const int h = data.horizon();
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> epoch_nll;
  epoch_nll.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
    double loss_sum = 0.0;
    size_t loss_count = 0;
    for (size_t begin = 0; begin < order.size(); begin += cfg.batch) {
      const size_t end = std::min(begin + cfg.batch, order.size());
      const std::vector<int> batch_idx(order.begin() + begin, order.begin() + end);
      const int batch = static_cast<int>(batch_idx.size());

      Tape tape;
      std::vector<NodeId> lstm_nodes = lstm_p.insert_all(tape);
      std::vector<NodeId> head_nodes = head_p.insert_all(tape);
      NodeId hstate = tape.input(Array2(batch, model.hidden()));
      NodeId cstate = tape.input(Array2(batch, model.hidden()));

      Array2 states(batch, data.state_dim());
      Array2 actions(batch, data.action_dim());
      NodeId total = -1;
      for (int t = 0; t < h; ++t) {
        gather_step(data, batch_idx, t, states, actions);
        NodeId x = tape.input(states);
        auto next = model.lstm().step(tape, lstm_nodes, x, hstate, cstate);
        hstate = next.h;
        cstate = next.c;
        auto out = model.head().forward(tape, head_nodes, hstate);
        NodeId nll = nn::gaussian_nll_node(tape, out.mu, out.log_std, actions);
        total = (total < 0) ? nll : tape.add(total, nll);
      }
      NodeId loss = tape.scale(total, 1.0 / h);  // mean per-step NLL

      auto grads = tape.backward(loss);
      std::vector<Array2> g(n_total);
      for (size_t i = 0; i < n_lstm; ++i) g[i] = grads[lstm_nodes[i]];
      for (size_t i = 0; i < head_p.count(); ++i) g[n_lstm + i] = grads[head_nodes[i]];
      adam.step(combined, g);
      for (size_t i = 0; i < n_lstm; ++i) lstm_p.at(i) = combined.at(i);
      for (size_t i = 0; i < head_p.count(); ++i) head_p.at(i) = combined.at(n_lstm + i);

      loss_sum += tape.value(loss).at(0, 0) * batch;
      loss_count += batch;
    }
    epoch_nll.push_back(loss_sum / static_cast<double>(loss_count));
  }
  return epoch_nll;
}

double GaussianSequenceModel::mean_nll(const SubsequenceDataset& data) const {
  if (data.state_dim() != state_dim_ || data.action_dim() != action_dim()) {
    throw ContractError("mean_nll: dataset dims do not match model");
  }
  double total = 0.0;
  size_t count = 0;
  std::vector<double> state(state_dim_), mu, sigma, action(action_dim());
  for (int i = 0; i < data.size(); ++i) {
    const auto& w = data.window(i);
    const Trajectory& traj = data.trajectory_of(w);
    nn::LstmState st = nn::LstmState::zero(hidden());
    for (int t = 0; t < data.horizon(); ++t) {
      const int r = w.start + t;
      for (int c = 0; c < state_dim_; ++c) state[c] = traj.states.at(r, c);
      const std::vector<double> x = normalize(state);
      lstm_.eval_step(x, st);
      head_.eval(st.h, mu, sigma);
      for (int c = 0; c < action_dim(); ++c) action[c] = traj.actions.at(r, c);
      total += nn::gaussian_nll(mu, sigma, action);
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

void GaussianSequenceModel::save(const std::string& path, const std::string& config_hash) const {
  nn::ParamSet all;
  const auto& lp = lstm_.params();
  for (size_t i = 0; i < lp.count(); ++i) all.add("lstm." + lp.name(i), lp.at(i));
  const auto& hp = head_.params();
  for (size_t i = 0; i < hp.count(); ++i) all.add("head." + hp.name(i), hp.at(i));
  all.add("norm.mean", Array2::row(norm_mean_));
  all.add("norm.std", Array2::row(norm_std_));
  nn::ModelMeta meta;
  meta.kind = "lep";
  meta.sizes = {state_dim_, hidden(), action_dim(), h_};
  meta.config_hash = config_hash;
  nn::save_params(all, meta, path);
}

GaussianSequenceModel GaussianSequenceModel::load(const std::string& path) {
  nn::LoadedModel loaded = nn::load_params(path);
  if (loaded.meta.kind != "lep") throw IoError("'" + path + "': expected model kind 'lep'");
  if (loaded.meta.sizes.size() != 4) throw IoError("'" + path + "': bad sizes metadata");
  const int sdim = loaded.meta.sizes[0];
  const int hidden = loaded.meta.sizes[1];
  const int adim = loaded.meta.sizes[2];
  const int h = loaded.meta.sizes[3];

  nn::ParamSet lstm_p, head_p;
  for (size_t i = 0; i < loaded.params.count(); ++i) {
    const std::string& name = loaded.params.name(i);
    if (name.rfind("lstm.", 0) == 0) lstm_p.add(name.substr(5), loaded.params.at(i));
    else if (name.rfind("head.", 0) == 0) head_p.add(name.substr(5), loaded.params.at(i));
  }
  GaussianSequenceModel m;
  m.lstm_ = nn::Lstm::from_params({sdim, hidden}, std::move(lstm_p));
  m.head_ = nn::GaussianHead::from_params(hidden, adim, std::move(head_p));
  m.state_dim_ = sdim;
  m.h_ = h;
  m.norm_mean_ = loaded.params.require("norm.mean", 1, sdim).row_vec(0);
  m.norm_std_ = loaded.params.require("norm.std", 1, sdim).row_vec(0);
  return m;
}

LepSampler::LepSampler(std::shared_ptr<const GaussianSequenceModel> model) : model_(std::move(model)) {
  if (!model_) throw ContractError("LepSampler: null model");
  state_ = nn::LstmState::zero(model_->hidden());
  pre_feed_ = state_;
}

void LepSampler::reset(uint64_t seed) {
  rng_.seed(seed);
  state_ = nn::LstmState::zero(model_->hidden());
  pre_feed_ = state_;
  t_ = 0;
  last_reset_ = false;
}

std::vector<double> LepSampler::sample(const std::vector<double>& state) { return sample_at(t_, state); }

std::vector<double> LepSampler::sample_at(int t, const std::vector<double>& state) {
  if (t != t_) {
    throw ContractError("lep_sample: out-of-order step " + std::to_string(t) + ", expected " +
                        std::to_string(t_));
  }
  if (static_cast<int>(state.size()) != model_->state_dim()) {
    throw ContractError("lep_sample: state dim mismatch");
  }
  last_reset_ = (t_ % model_->horizon() == 0);
  if (last_reset_) state_ = nn::LstmState::zero(model_->hidden());
  pre_feed_ = state_;
  const std::vector<double> x = model_->normalize(state);
  model_->lstm().eval_step(x, state_);
  model_->head().eval(state_.h, mu_, sigma_);
  std::vector<double> eps(mu_.size());
  for (size_t i = 0; i < eps.size(); ++i) eps[i] = mu_[i] + sigma_[i] * rng_.normal();
  ++t_;
  return eps;
}

}  // namespace lep::explore
