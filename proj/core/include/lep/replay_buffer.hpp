#pragma once

#include <cstddef>
#include <vector>

#include "lep/rng.hpp"

namespace lep::ddpg {

struct Transition {
  std::vector<double> s;
  std::vector<double> a;
  double r = 0.0;
  std::vector<double> s_next;
  bool done = false;
};

// Fixed-capacity ring buffer with FIFO overwrite and uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);

  void push(Transition t);
  size_t size() const { return size_; }
  size_t capacity() const { return capacity_; }
  const Transition& at(size_t i) const { return storage_[i]; }

  std::vector<const Transition*> sample(size_t batch, Rng& rng) const;

 private:
  size_t capacity_;
  size_t cursor_ = 0;
  size_t size_ = 0;
  std::vector<Transition> storage_;
};

}  // namespace lep::ddpg
