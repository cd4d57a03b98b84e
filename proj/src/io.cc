/*
 * Copyright 2026 The GDP Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gdp/io.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <system_error>

namespace gdp {

using nlohmann::json;

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::random_device rd;
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::vector<std::string> split_record(const std::string& line, std::size_t line_no,
                                      const std::string& source) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) {
    throw FormatError(source + ": unterminated quote on line " + std::to_string(line_no));
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string quote_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw FormatError("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_record(line, line_no, source);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw FormatError(source + ": line " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " fields, header has " +
                        std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw FormatError(source + ": missing header row");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_file(path), path.string());
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << quote_cell(cells[i]);
    }
    out << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  write_file_atomic(path, to_csv(table));
}

Matrix numeric_columns(const CsvTable& table, const std::vector<std::string>& names,
                       const std::string& source) {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& name : names) {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw FormatError(source + ": missing column '" + name + "'");
    idx.push_back(static_cast<std::size_t>(it - table.header.begin()));
  }
  Matrix out(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const auto value = parse_double(table.rows[r][idx[c]]);
      if (!value) {
        throw FormatError(source + ": non-numeric value '" + table.rows[r][idx[c]] +
                          "' at row " + std::to_string(r + 1) + ", column '" + names[c] + "'");
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *value;
    }
  }
  return out;
}

CategoricalColumn categorical_column(const CsvTable& table, const std::string& name) {
  const std::size_t c = table.column(name);
  std::set<std::string> distinct;
  for (const auto& row : table.rows) distinct.insert(row[c]);
  CategoricalColumn out;
  out.labels.assign(distinct.begin(), distinct.end());
  const bool numeric = std::all_of(out.labels.begin(), out.labels.end(),
                                   [](const std::string& s) { return parse_double(s).has_value(); });
  if (numeric) {
    std::stable_sort(out.labels.begin(), out.labels.end(),
                     [](const std::string& a, const std::string& b) {
                       return *parse_double(a) < *parse_double(b);
                     });
  }
  std::map<std::string, int> code;
  for (std::size_t i = 0; i < out.labels.size(); ++i) code[out.labels[i]] = static_cast<int>(i);
  out.codes.reserve(table.rows.size());
  for (const auto& row : table.rows) out.codes.push_back(code.at(row[c]));
  return out;
}

namespace {

std::vector<std::string> other_columns(const CsvTable& table, const std::vector<std::string>& skip) {
  std::vector<std::string> out;
  for (const auto& h : table.header) {
    if (std::find(skip.begin(), skip.end(), h) == skip.end()) out.push_back(h);
  }
  return out;
}

}  // namespace

LoadedDataset load_dataset(const std::filesystem::path& path,
                           const std::vector<std::string>& target_cols) {
  const CsvTable table = read_csv(path);
  for (const auto& t : target_cols) {
    if (std::find(table.header.begin(), table.header.end(), t) == table.header.end()) {
      throw FormatError(path.string() + ": missing target column '" + t + "'");
    }
  }
  LoadedDataset out;
  out.response_names = target_cols;
  out.predictor_names = other_columns(table, target_cols);
  out.data.x = numeric_columns(table, out.predictor_names, path.string());
  out.data.y = numeric_columns(table, target_cols, path.string());
  return out;
}

LoadedCategoricalDataset load_categorical_dataset(const std::filesystem::path& path,
                                                  const std::string& target_col) {
  const CsvTable table = read_csv(path);
  if (std::find(table.header.begin(), table.header.end(), target_col) == table.header.end()) {
    throw FormatError(path.string() + ": missing target column '" + target_col + "'");
  }
  LoadedCategoricalDataset out;
  out.response_name = target_col;
  out.predictor_names = other_columns(table, {target_col});
  out.data.x = numeric_columns(table, out.predictor_names, path.string());
  CategoricalColumn labels = categorical_column(table, target_col);
  out.data.labels = std::move(labels.codes);
  out.label_names = std::move(labels.labels);
  return out;
}

void save_dataset(const std::filesystem::path& path, const Dataset& data,
                  const std::vector<std::string>& predictor_names,
                  const std::vector<std::string>& response_names) {
  if (static_cast<Eigen::Index>(predictor_names.size()) != data.x.cols() ||
      static_cast<Eigen::Index>(response_names.size()) != data.y.cols()) {
    throw std::invalid_argument("save_dataset: column names do not match the data");
  }
  CsvTable table;
  table.header = predictor_names;
  table.header.insert(table.header.end(), response_names.begin(), response_names.end());
  table.rows.reserve(static_cast<std::size_t>(data.x.rows()));
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) row.push_back(format_double(data.x(i, j)));
    for (Eigen::Index j = 0; j < data.y.cols(); ++j) row.push_back(format_double(data.y(i, j)));
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

std::vector<std::string> default_predictor_names(int p) {
  std::vector<std::string> names;
  for (int j = 1; j <= p; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

json vector_to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json mlp_to_json(const Mlp& net) {
  json layers = json::array();
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const auto w = net.weight(l);
    json rows = json::array();
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      rows.push_back(vector_to_json(w.row(i).transpose()));
    }
    layers.push_back({{"weight", std::move(rows)}, {"bias", vector_to_json(net.bias(l))}});
  }
  return layers;
}

Mlp mlp_from_json(const std::vector<int>& dims, const json& layers, const char* what) {
  Mlp net(dims);
  if (!layers.is_array() || layers.size() != net.num_layers()) {
    throw FormatError(std::string("checkpoint: ") + what + " has the wrong number of layers");
  }
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const json& rows = layers[l].at("weight");
    auto w = net.weight(l);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != w.rows()) {
      throw FormatError(std::string("checkpoint: ") + what + " layer " + std::to_string(l) +
                        " weight has the wrong shape");
    }
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      const Vector row = vector_from_json(rows[static_cast<std::size_t>(i)]);
      if (row.size() != w.cols()) {
        throw FormatError(std::string("checkpoint: ") + what + " layer " + std::to_string(l) +
                          " weight has the wrong shape");
      }
      w.row(i) = row.transpose();
    }
    const Vector b = vector_from_json(layers[l].at("bias"));
    if (b.size() != net.bias(l).size()) {
      throw FormatError(std::string("checkpoint: ") + what + " layer " + std::to_string(l) +
                        " bias has the wrong length");
    }
    net.bias(l) = b;
  }
  return net;
}

json info_to_json(const TrainingInfo& info) {
  return {{"seed", info.seed},
          {"epochs_run", info.epochs_run},
          {"final_val_loss", info.final_val_loss},
          {"n_train", info.n_train},
          {"train_loss_history", info.train_loss_history},
          {"val_loss_history", info.val_loss_history}};
}

TrainingInfo info_from_json(const json& j, Role role) {
  TrainingInfo info;
  info.role = role;
  info.seed = j.at("seed").get<std::uint64_t>();
  info.epochs_run = j.at("epochs_run").get<int>();
  info.final_val_loss = j.at("final_val_loss").get<double>();
  info.n_train = j.at("n_train").get<std::size_t>();
  info.train_loss_history = j.value("train_loss_history", std::vector<double>{});
  info.val_loss_history = j.value("val_loss_history", std::vector<double>{});
  return info;
}

}  // namespace

json checkpoint_to_json(const Checkpoint& checkpoint) {
  json doc;
  doc["format_version"] = Checkpoint::kFormatVersion;
  doc["columns"] = {{"predictors", checkpoint.meta.predictor_names},
                    {"responses", checkpoint.meta.response_names},
                    {"labels", checkpoint.meta.label_names}};
  if (const auto* gen = std::get_if<ConditionalGenerator>(&checkpoint.generator)) {
    doc["kind"] = "gaussian";
    doc["role"] = to_string(gen->info.role);
    doc["architecture"] = {{"predictor_dim", gen->predictor_dim()},
                           {"response_dim", gen->response_dim()},
                           {"embed_dim", gen->embed_dim()},
                           {"time_dim", gen->time_dim},
                           {"embedder_layers", gen->embedder.layer_dims()},
                           {"score_net_layers", gen->score_net.layer_dims()}};
    doc["schedule"] = {{"timesteps", gen->schedule.steps()},
                       {"beta_min", gen->schedule.beta_min()},
                       {"beta_max", gen->schedule.beta_max()}};
    doc["standardizer"] = {{"x_mean", vector_to_json(gen->x_scaler.mean)},
                           {"x_scale", vector_to_json(gen->x_scaler.scale)},
                           {"y_mean", vector_to_json(gen->y_scaler.mean)},
                           {"y_scale", vector_to_json(gen->y_scaler.scale)}};
    doc["weights"] = {{"embedder", mlp_to_json(gen->embedder)},
                      {"score_net", mlp_to_json(gen->score_net)}};
    doc["training"] = info_to_json(gen->info);
  } else {
    const auto& dgen = std::get<DiscreteGenerator>(checkpoint.generator);
    doc["kind"] = "discrete";
    doc["role"] = to_string(dgen.info.role);
    doc["architecture"] = {{"predictor_dim", dgen.predictor_dim()},
                           {"num_categories", dgen.num_categories()},
                           {"embed_dim", dgen.embed_dim()},
                           {"time_dim", dgen.time_dim},
                           {"embedder_layers", dgen.embedder.layer_dims()},
                           {"denoise_net_layers", dgen.denoise_net.layer_dims()}};
    doc["schedule"] = {{"timesteps", dgen.schedule.steps()},
                       {"beta_min", dgen.schedule.beta_min()},
                       {"beta_max", dgen.schedule.beta_max()},
                       {"num_categories", dgen.schedule.num_categories()}};
    doc["standardizer"] = {{"x_mean", vector_to_json(dgen.x_scaler.mean)},
                           {"x_scale", vector_to_json(dgen.x_scaler.scale)}};
    doc["weights"] = {{"embedder", mlp_to_json(dgen.embedder)},
                      {"denoise_net", mlp_to_json(dgen.denoise_net)}};
    doc["training"] = info_to_json(dgen.info);
  }
  return doc;
}

Checkpoint checkpoint_from_json(const json& doc) {
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != Checkpoint::kFormatVersion) {
      throw FormatError("unsupported checkpoint format_version " + std::to_string(version) +
                        " (expected " + std::to_string(Checkpoint::kFormatVersion) + ")");
    }
    Checkpoint ckpt;
    const json& cols = doc.at("columns");
    ckpt.meta.predictor_names = cols.at("predictors").get<std::vector<std::string>>();
    ckpt.meta.response_names = cols.at("responses").get<std::vector<std::string>>();
    ckpt.meta.label_names = cols.value("labels", std::vector<std::string>{});
    const Role role = role_from_string(doc.at("role").get<std::string>());
    const std::string kind = doc.at("kind").get<std::string>();
    const json& arch = doc.at("architecture");
    const json& sched = doc.at("schedule");
    const json& stdz = doc.at("standardizer");
    const json& weights = doc.at("weights");
    if (kind == "gaussian") {
      ConditionalGenerator gen;
      gen.embedder = mlp_from_json(arch.at("embedder_layers").get<std::vector<int>>(),
                                   weights.at("embedder"), "embedder");
      gen.score_net = mlp_from_json(arch.at("score_net_layers").get<std::vector<int>>(),
                                    weights.at("score_net"), "score_net");
      gen.time_dim = arch.at("time_dim").get<int>();
      gen.schedule = NoiseSchedule::linear(sched.at("timesteps").get<int>(),
                                           sched.at("beta_min").get<double>(),
                                           sched.at("beta_max").get<double>());
      gen.x_scaler = {vector_from_json(stdz.at("x_mean")), vector_from_json(stdz.at("x_scale"))};
      gen.y_scaler = {vector_from_json(stdz.at("y_mean")), vector_from_json(stdz.at("y_scale"))};
      gen.info = info_from_json(doc.at("training"), role);
      gen.validate();
      ckpt.generator = std::move(gen);
    } else if (kind == "discrete") {
      DiscreteGenerator gen;
      gen.embedder = mlp_from_json(arch.at("embedder_layers").get<std::vector<int>>(),
                                   weights.at("embedder"), "embedder");
      gen.denoise_net = mlp_from_json(arch.at("denoise_net_layers").get<std::vector<int>>(),
                                      weights.at("denoise_net"), "denoise_net");
      gen.time_dim = arch.at("time_dim").get<int>();
      gen.schedule = DiscreteSchedule::linear(
          sched.at("num_categories").get<int>(), sched.at("timesteps").get<int>(),
          sched.at("beta_min").get<double>(), sched.at("beta_max").get<double>());
      gen.x_scaler = {vector_from_json(stdz.at("x_mean")), vector_from_json(stdz.at("x_scale"))};
      gen.info = info_from_json(doc.at("training"), role);
      gen.validate();
      ckpt.generator = std::move(gen);
    } else {
      throw FormatError("unknown checkpoint kind '" + kind + "'");
    }
    return ckpt;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("inconsistent checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  write_file_atomic(path, checkpoint_to_json(checkpoint).dump() + "\n");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": not valid JSON: " + e.what());
  }
  return checkpoint_from_json(doc);
}

// ---------------------------------------------------------------------------
// Run configs

void RunConfig::set_seed(std::uint64_t seed) {
  sim.seed = seed;
  train.seed = seed;
}

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("run config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "n") cfg.sim.n = value.get<std::size_t>();
      else if (key == "p") cfg.sim.p = value.get<int>();
      else if (key == "case") cfg.sim.sim_case = sim_case_from_string(value.get<std::string>());
      else if (key == "rho") cfg.sim.rho = value.get<double>();
      else if (key == "train_fraction") cfg.sim.train_fraction = value.get<double>();
      else if (key == "seed") cfg.set_seed(value.get<std::uint64_t>());
      else if (key == "m") cfg.sim.m = value.get<int>();
      else if (key == "alphas") cfg.sim.alphas = value.get<std::vector<double>>();
      else if (key == "test_subset") cfg.sim.test_subset = value.get<std::size_t>();
      else if (key == "stride") cfg.sim.stride = value.get<int>();
      else if (key == "threads") cfg.sim.threads = value.get<unsigned>();
      else if (key == "full_fidelity") cfg.full_fidelity = value.get<bool>();
      else if (key == "batch_size") cfg.train.batch_size = value.get<int>();
      else if (key == "learning_rate") cfg.train.learning_rate = value.get<double>();
      else if (key == "ema_decay") cfg.train.ema_decay = value.get<double>();
      else if (key == "max_epochs") cfg.train.max_epochs = value.get<int>();
      else if (key == "patience") cfg.train.patience = value.get<int>();
      else if (key == "width") cfg.train.width = value.get<int>();
      else if (key == "depth") cfg.train.depth = value.get<int>();
      else if (key == "embed_dim") cfg.train.embed_dim = value.get<int>();
      else if (key == "time_dim") cfg.train.time_dim = value.get<int>();
      else if (key == "timesteps") cfg.train.timesteps = value.get<int>();
      else if (key == "beta_min") cfg.train.beta_min = value.get<double>();
      else if (key == "beta_max") cfg.train.beta_max = value.get<double>();
      else if (key == "val_fraction") cfg.train.val_fraction = value.get<double>();
      else if (key == "freeze_embedder") cfg.transfer.freeze_embedder = value.get<bool>();
      else if (key == "warm_start_score_net") cfg.transfer.warm_start_score_net = value.get<bool>();
      else if (key == "target_epochs") cfg.transfer.target_epochs = value.get<int>();
      else if (key == "target_lr") cfg.transfer.target_lr = value.get<double>();
      else throw FormatError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad value in run config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (cfg.full_fidelity) cfg.sim.set_full_fidelity();
  try {
    cfg.sim.validate();
    cfg.train.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": not valid JSON: " + e.what());
  }
  return run_config_from_json(doc);
}

json run_config_to_json(const RunConfig& c) {
  json doc = {{"n", c.sim.n},
              {"p", c.sim.p},
              {"case", to_string(c.sim.sim_case)},
              {"rho", c.sim.rho},
              {"train_fraction", c.sim.train_fraction},
              {"seed", c.sim.seed},
              {"m", c.sim.m},
              {"alphas", c.sim.alphas},
              {"test_subset", c.sim.test_subset},
              {"stride", c.sim.stride},
              {"threads", c.sim.threads},
              {"full_fidelity", c.full_fidelity},
              {"batch_size", c.train.batch_size},
              {"learning_rate", c.train.learning_rate},
              {"ema_decay", c.train.ema_decay},
              {"max_epochs", c.train.max_epochs},
              {"patience", c.train.patience},
              {"width", c.train.width},
              {"depth", c.train.depth},
              {"embed_dim", c.train.embed_dim},
              {"time_dim", c.train.time_dim},
              {"timesteps", c.train.timesteps},
              {"beta_min", c.train.beta_min},
              {"beta_max", c.train.beta_max},
              {"val_fraction", c.train.val_fraction},
              {"freeze_embedder", c.transfer.freeze_embedder},
              {"warm_start_score_net", c.transfer.warm_start_score_net}};
  if (c.transfer.target_epochs) doc["target_epochs"] = *c.transfer.target_epochs;
  if (c.transfer.target_lr) doc["target_lr"] = *c.transfer.target_lr;
  return doc;
}

void apply_env_overrides(RunConfig& config) {
  const char* env = std::getenv("GDP_SEED");
  if (env == nullptr || *env == '\0') return;
  std::uint64_t seed = 0;
  const std::string_view text(env);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw FormatError("GDP_SEED must be a non-negative integer, got '" + std::string(text) + "'");
  }
  config.set_seed(seed);
}

}  // namespace gdp
