#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lep/adam.hpp"
#include "lep/lstm.hpp"
#include "lep/trajectory.hpp"

namespace lep::explore {

// Fixed-length windows sampled uniformly over (trajectory, start offset),
// stored as references into the shared trajectory store, plus the per-dim
// state normalization statistics of the sampled windows.
class SubsequenceDataset {
 public:
  struct WindowRef {
    int trajectory = 0;
    int start = 0;
  };

  static SubsequenceDataset build(std::shared_ptr<const std::vector<Trajectory>> trajectories, int h,
                                  int count, Rng& rng);

  int horizon() const { return h_; }
  int size() const { return static_cast<int>(windows_.size()); }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  const WindowRef& window(int i) const { return windows_[i]; }
  const Trajectory& trajectory_of(const WindowRef& w) const { return (*trajectories_)[w.trajectory]; }

  const std::vector<double>& norm_mean() const { return norm_mean_; }
  const std::vector<double>& norm_std() const { return norm_std_; }

  // Split off a holdout fraction (shuffled by rng); this keeps the rest.
  SubsequenceDataset split_holdout(double fraction, Rng& rng);

 private:
  std::shared_ptr<const std::vector<Trajectory>> trajectories_;
  std::vector<WindowRef> windows_;
  int h_ = 0;
  int state_dim_ = 0;
  int action_dim_ = 0;
  std::vector<double> norm_mean_;
  std::vector<double> norm_std_;

  void compute_stats();
};

// The learned exploration process: an LSTM over normalized state
// histories with a diagonal-Gaussian action head and the horizon used
// both for training windows and recurrent-state resets.
class GaussianSequenceModel {
 public:
  GaussianSequenceModel() = default;
  static GaussianSequenceModel make(int state_dim, int action_dim, int hidden, int h, uint64_t seed);

  int state_dim() const { return state_dim_; }
  int action_dim() const { return head_.action_dim(); }
  int hidden() const { return lstm_.dims().hidden; }
  int horizon() const { return h_; }

  nn::Lstm& lstm() { return lstm_; }
  const nn::Lstm& lstm() const { return lstm_; }
  nn::GaussianHead& head() { return head_; }
  const nn::GaussianHead& head() const { return head_; }

  void set_normalization(std::vector<double> mean, std::vector<double> std);
  const std::vector<double>& norm_mean() const { return norm_mean_; }
  const std::vector<double>& norm_std() const { return norm_std_; }
  std::vector<double> normalize(const std::vector<double>& state) const;

  // Mean per-step NLL of the dataset's action windows under the model
  // (forward only; matches the training objective).
  double mean_nll(const SubsequenceDataset& data) const;

  void save(const std::string& path, const std::string& config_hash) const;
  static GaussianSequenceModel load(const std::string& path);

 private:
  nn::Lstm lstm_;
  nn::GaussianHead head_;
  int state_dim_ = 0;
  int h_ = 20;
  std::vector<double> norm_mean_;
  std::vector<double> norm_std_;
};

struct LepTrainConfig {
  int epochs = 50;
  int batch = 64;
  double lr = 1e-3;
};

// Maximum-likelihood training over h-step windows: reset state, unroll,
// accumulate the Gaussian NLL of the true actions, Adam on the mean.
// Returns the per-epoch mean NLL (per window step).
std::vector<double> train_lep(const SubsequenceDataset& data, GaussianSequenceModel& model,
                              const LepTrainConfig& cfg, Rng& rng);

// Episode-scoped sampler: resets the recurrent state whenever
// t mod h == 0, feeds the normalized state, then draws from the
// conditioned Gaussian. States must arrive in consecutive order.
class LepSampler {
 public:
  explicit LepSampler(std::shared_ptr<const GaussianSequenceModel> model);

  void reset(uint64_t seed);
  std::vector<double> sample(const std::vector<double>& state);
  // Explicit-index variant enforcing the consecutive-order contract.
  std::vector<double> sample_at(int t, const std::vector<double>& state);

  int expected_step() const { return t_; }
  bool last_was_reset() const { return last_reset_; }
  // Recurrent state snapshot taken after any reset, before feeding s_t.
  const nn::LstmState& pre_feed_state() const { return pre_feed_; }
  const std::vector<double>& last_mu() const { return mu_; }
  const std::vector<double>& last_sigma() const { return sigma_; }
  Rng& rng() { return rng_; }

 private:
  std::shared_ptr<const GaussianSequenceModel> model_;
  nn::LstmState state_;
  nn::LstmState pre_feed_;
  Rng rng_;
  int t_ = 0;
  bool last_reset_ = false;
  std::vector<double> mu_;
  std::vector<double> sigma_;
};

}  // namespace lep::explore
