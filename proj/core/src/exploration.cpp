#include "lep/exploration.hpp"

#include <cmath>

#include "lep/errors.hpp"

namespace lep::explore {

std::vector<double> gaussian_sample(double sigma, int dim, Rng& rng) {
  if (sigma < 0.0) throw ContractError("gaussian_sample: sigma must be >= 0");
  std::vector<double> eps(dim);
  for (auto& e : eps) e = sigma * rng.normal();
  return eps;
}

GaussianNoise::GaussianNoise(int dim, double sigma, std::vector<double> scale)
    : dim_(dim), sigma_(sigma), scale_(std::move(scale)) {
  if (sigma < 0.0) throw ContractError("GaussianNoise: sigma must be >= 0");
  if (scale_.empty()) scale_.assign(dim_, 1.0);
  if (static_cast<int>(scale_.size()) != dim_) throw ContractError("GaussianNoise: scale dim mismatch");
}

std::vector<double> GaussianNoise::sample(const std::vector<double>&) {
  std::vector<double> eps(dim_);
  for (int i = 0; i < dim_; ++i) eps[i] = sigma_ * scale_[i] * rng_.normal();
  return eps;
}

OuNoise::OuNoise(int dim, OuParams params, std::vector<double> scale)
    : dim_(dim), p_(params), scale_(std::move(scale)), x_(dim, 0.0) {
  if (p_.theta <= 0.0) throw ContractError("OuNoise: theta must be positive");
  if (p_.sigma < 0.0) throw ContractError("OuNoise: sigma must be >= 0");
  if (scale_.empty()) scale_.assign(dim_, 1.0);
  if (static_cast<int>(scale_.size()) != dim_) throw ContractError("OuNoise: scale dim mismatch");
}

void OuNoise::reset(uint64_t seed) {
  rng_.seed(seed);
  x_.assign(dim_, 0.0);
}

std::vector<double> OuNoise::sample(const std::vector<double>&) {
  const double root_dt = std::sqrt(p_.dt);
  std::vector<double> eps(dim_);
  for (int i = 0; i < dim_; ++i) {
    x_[i] += p_.theta * (p_.mu - x_[i]) * p_.dt + p_.sigma * root_dt * rng_.normal();
    eps[i] = scale_[i] * x_[i];
  }
  return eps;
}

LepExploration::LepExploration(std::shared_ptr<const GaussianSequenceModel> model)
    : sampler_(std::move(model)) {}

int LepExploration::dim() const { return sampler_.last_mu().empty() ? 0 : static_cast<int>(sampler_.last_mu().size()); }

}  // namespace lep::exploration
