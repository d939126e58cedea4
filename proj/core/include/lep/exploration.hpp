#pragma once

#include <memory>
#include <vector>

#include "lep/lep_model.hpp"
#include "lep/rng.hpp"

namespace lep::explore {

// Common contract of every exploration noise source: reset at episode
// start, then one action-dim sample per environment step. Outputs are
// finite and deterministic under a fixed seed.
class ExplorationProcess {
 public:
  virtual ~ExplorationProcess() = default;
  virtual void reset(uint64_t seed) = 0;
  virtual std::vector<double> sample(const std::vector<double>& state) = 0;
  virtual int dim() const = 0;
};

// i.i.d. N(0, sigma^2) per dimension.
std::vector<double> gaussian_sample(double sigma, int dim, Rng& rng);

class GaussianNoise final : public ExplorationProcess {
 public:
  // per-dim stddev = sigma * scale[i] (scale defaults to ones)
  GaussianNoise(int dim, double sigma, std::vector<double> scale = {});
  void reset(uint64_t seed) override { rng_.seed(seed); }
  std::vector<double> sample(const std::vector<double>&) override;
  int dim() const override { return dim_; }

 private:
  int dim_;
  double sigma_;
  std::vector<double> scale_;
  Rng rng_;
};

struct OuParams {
  double theta = 0.15;
  double sigma = 0.2;
  double mu = 0.0;
  double dt = 1.0;
};

// Discrete Ornstein-Uhlenbeck: x += theta*(mu-x)*dt + sigma*sqrt(dt)*N(0,1).
class OuNoise final : public ExplorationProcess {
 public:
  OuNoise(int dim, OuParams params, std::vector<double> scale = {});
  void reset(uint64_t seed) override;
  std::vector<double> sample(const std::vector<double>&) override;
  int dim() const override { return dim_; }
  const std::vector<double>& internal_state() const { return x_; }

 private:
  int dim_;
  OuParams p_;
  std::vector<double> scale_;
  std::vector<double> x_;
  Rng rng_;
};

// Samples from the learned exploration process with the h-step reset.
// Outputs are in raw action units (the model is trained on them).
class LepExploration final : public ExplorationProcess {
 public:
  explicit LepExploration(std::shared_ptr<const GaussianSequenceModel> model);
  void reset(uint64_t seed) override { sampler_.reset(seed); }
  std::vector<double> sample(const std::vector<double>& state) override { return sampler_.sample(state); }
  int dim() const override;
  LepSampler& sampler() { return sampler_; }

 private:
  LepSampler sampler_;
};

}  // namespace lep::explore
