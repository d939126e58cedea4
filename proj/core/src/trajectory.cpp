#include "lep/trajectory.hpp"

#include <fstream>

#include <json.hpp>

#include "lep/errors.hpp"

namespace lep::explore {

using nlohmann::json;

namespace {

json matrix_to_json(const Array2& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row_vec(r));
  return rows;
}

Array2 matrix_from_json(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw IoError(std::string(what) + ": expected non-empty array");
  const int n = static_cast<int>(rows.size());
  const int cols = static_cast<int>(rows[0].size());
  Array2 m(n, cols);
  for (int r = 0; r < n; ++r) {
    const auto row = rows[r].get<std::vector<double>>();
    if (static_cast<int>(row.size()) != cols) throw IoError(std::string(what) + ": ragged rows");
    for (int c = 0; c < cols; ++c) m.at(r, c) = row[c];
  }
  return m;
}

}  // namespace

void save_trajectories(const std::string& path, const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) throw ContractError("save_trajectories: nothing to save");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  json header;
  header["version"] = 1;
  header["state_dim"] = trajectories.front().state_dim();
  header["action_dim"] = trajectories.front().action_dim();
  out << header.dump() << "\n";
  for (const auto& t : trajectories) {
    if (t.states.rows() != t.actions.rows()) throw ContractError("save_trajectories: state/action length mismatch");
    json rec;
    rec["task_id"] = t.task_id;
    rec["instance_id"] = t.instance_id;
    rec["source"] = t.source;
    rec["state_dim"] = t.state_dim();
    rec["action_dim"] = t.action_dim();
    rec["states"] = matrix_to_json(t.states);
    rec["actions"] = matrix_to_json(t.actions);
    out << rec.dump() << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<Trajectory> load_trajectories(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "': empty dataset");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "' header: " + e.what());
  }
  if (header.value("version", 0) != 1) throw IoError("'" + path + "': unsupported dataset version");
  const int sdim = header.at("state_dim").get<int>();
  const int adim = header.at("action_dim").get<int>();

  std::vector<Trajectory> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": " + e.what());
    }
    Trajectory t;
    t.task_id = rec.at("task_id").get<std::string>();
    t.instance_id = rec.at("instance_id").get<int>();
    t.source = rec.at("source").get<std::string>();
    t.states = matrix_from_json(rec.at("states"), "states");
    t.actions = matrix_from_json(rec.at("actions"), "actions");
    if (t.state_dim() != sdim || t.action_dim() != adim) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": dims disagree with header");
    }
    if (t.states.rows() != t.actions.rows()) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": state/action length mismatch");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Trajectory> collect_trajectories(const PolicySource& source, const std::string& source_tag,
                                             const std::vector<envs::TaskSpec>& specs, int n_per_spec,
                                             uint64_t seed) {
  if (n_per_spec < 1) throw ContractError("collect_trajectories: n_per_spec must be >= 1");
  std::vector<Trajectory> out;
  for (size_t si = 0; si < specs.size(); ++si) {
    const auto& spec = specs[si];
    auto env = envs::make_env(spec);
    const envs::Policy policy = source(spec);
    for (int n = 0; n < n_per_spec; ++n) {
      Rng reset_rng(Rng::derive(seed, si, n, 0x7e0));
      std::vector<double> state = env->reset(reset_rng);
      Trajectory t;
      t.task_id = envs::task_name(spec.env, spec.kind);
      t.instance_id = spec.instance_id;
      t.source = source_tag;
      t.states = Array2(spec.horizon, env->state_dim());
      t.actions = Array2(spec.horizon, env->action_dim());
      for (int step = 0; step < spec.horizon; ++step) {
        std::vector<double> a = policy(state, step);
        if (a.empty()) a.assign(env->action_dim(), 0.0);
        for (int c = 0; c < env->state_dim(); ++c) t.states.at(step, c) = state[c];
        for (int c = 0; c < env->action_dim(); ++c) t.actions.at(step, c) = a[c];
        envs::StepResult r = env->step(a);
        state = std::move(r.state);
        if (r.done) break;
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace lep::explore
