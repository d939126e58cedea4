#include "lep/replay_buffer.hpp"

#include "lep/errors.hpp"

namespace lep::ddpg {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ContractError("ReplayBuffer: capacity must be positive");
  storage_.reserve(std::min<size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(Transition t) {
  if (size_ < capacity_) {
    storage_.push_back(std::move(t));
    ++size_;
  } else {
    storage_[cursor_] = std::move(t);
  }
  cursor_ = (cursor_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(size_t batch, Rng& rng) const {
  if (size_ == 0) throw ContractError("ReplayBuffer::sample: empty buffer");
  std::vector<const Transition*> out(batch);
  for (auto& p : out) p = &storage_[rng.uniform_index(size_)];
  return out;
}

}  // namespace lep::ddpg
