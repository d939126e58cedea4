#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lep/tape.hpp"

namespace lep::nn {

using math::Array2;
using math::NodeId;
using math::Tape;

// Ordered collection of named tensors. Insertion order is the canonical
// order used by optimizers and tape insertion.
class ParamSet {
 public:
  int add(const std::string& name, Array2 value);
  bool has(const std::string& name) const { return index_.count(name) > 0; }
  int index_of(const std::string& name) const;

  const Array2& get(const std::string& name) const;
  Array2& get(const std::string& name);

  // Schema-checked access: throws IoError naming the tensor or the
  // expected vs found shape.
  const Array2& require(const std::string& name, int rows, int cols) const;

  size_t count() const { return values_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  const Array2& at(size_t i) const { return values_[i]; }
  Array2& at(size_t i) { return values_[i]; }

  // Insert every tensor as a tape input, returning node ids in order.
  std::vector<NodeId> insert_all(Tape& tape) const;

  bool all_finite() const;

 private:
  std::vector<std::string> names_;
  std::vector<Array2> values_;
  std::unordered_map<std::string, int> index_;
};

struct ModelMeta {
  std::string kind;
  std::vector<int> sizes;
  std::string config_hash;
  std::map<std::string, std::string> extra;
};

struct LoadedModel {
  ParamSet params;
  ModelMeta meta;
};

// Structured-text model file: {"format", "meta", "tensors": {name: {shape, values}}}.
// Values round-trip exactly.
void save_params(const ParamSet& params, const ModelMeta& meta, const std::string& path);
LoadedModel load_params(const std::string& path);

}  // namespace lep::nn
