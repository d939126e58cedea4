#include "lep/params.hpp"

#include <fstream>

#include <json.hpp>

#include "lep/errors.hpp"

namespace lep::nn {

using nlohmann::json;

int ParamSet::add(const std::string& name, Array2 value) {
  if (index_.count(name)) throw ContractError("ParamSet: duplicate tensor '" + name + "'");
  if (!value.all_finite()) throw ContractError("ParamSet: non-finite values in '" + name + "'");
  const int idx = static_cast<int>(values_.size());
  names_.push_back(name);
  values_.push_back(std::move(value));
  index_[name] = idx;
  return idx;
}

int ParamSet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

const Array2& ParamSet::get(const std::string& name) const {
  const int i = index_of(name);
  if (i < 0) throw ContractError("ParamSet: no tensor '" + name + "'");
  return values_[i];
}

Array2& ParamSet::get(const std::string& name) {
  const int i = index_of(name);
  if (i < 0) throw ContractError("ParamSet: no tensor '" + name + "'");
  return values_[i];
}

const Array2& ParamSet::require(const std::string& name, int rows, int cols) const {
  const int i = index_of(name);
  if (i < 0) throw IoError("missing tensor '" + name + "'");
  const Array2& v = values_[i];
  if (v.rows() != rows || v.cols() != cols) {
    throw IoError("tensor '" + name + "': expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                  ", found " + v.shape_str());
  }
  return v;
}

std::vector<NodeId> ParamSet::insert_all(Tape& tape) const {
  std::vector<NodeId> ids;
  ids.reserve(values_.size());
  for (const auto& v : values_) ids.push_back(tape.input(v));
  return ids;
}

bool ParamSet::all_finite() const {
  for (const auto& v : values_) {
    if (!v.all_finite()) return false;
  }
  return true;
}

void save_params(const ParamSet& params, const ModelMeta& meta, const std::string& path) {
  if (!params.all_finite()) throw ContractError("save_params: non-finite parameters");
  json doc;
  doc["format"] = "lepx-params-v1";
  doc["meta"]["kind"] = meta.kind;
  doc["meta"]["sizes"] = meta.sizes;
  doc["meta"]["config_hash"] = meta.config_hash;
  doc["meta"]["extra"] = meta.extra;
  json tensors = json::object();
  for (size_t i = 0; i < params.count(); ++i) {
    const Array2& v = params.at(i);
    json t;
    t["shape"] = {v.rows(), v.cols()};
    t["values"] = v.data();
    tensors[params.name(i)] = std::move(t);
  }
  doc["tensors"] = std::move(tensors);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << doc.dump(1) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

LoadedModel load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError("parse error in '" + path + "': " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "lepx-params-v1") {
    throw IoError("'" + path + "' is not a lepx params file");
  }
  LoadedModel out;
  const json& m = doc.at("meta");
  out.meta.kind = m.value("kind", "");
  out.meta.sizes = m.value("sizes", std::vector<int>{});
  out.meta.config_hash = m.value("config_hash", "");
  if (m.contains("extra")) out.meta.extra = m.at("extra").get<std::map<std::string, std::string>>();
  for (const auto& [name, t] : doc.at("tensors").items()) {
    const auto shape = t.at("shape").get<std::vector<int>>();
    const auto values = t.at("values").get<std::vector<double>>();
    if (shape.size() != 2 || static_cast<size_t>(shape[0]) * shape[1] != values.size()) {
      throw IoError("tensor '" + name + "': shape/value mismatch");
    }
    Array2 v(shape[0], shape[1]);
    v.data() = values;
    out.params.add(name, std::move(v));
  }
  return out;
}

}  // namespace lep::nn
