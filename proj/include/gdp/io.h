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

// Files: CSV datasets, JSON checkpoints and JSON run configs. Every writer
// goes through write_file_atomic, so a failed command never leaves a partial
// output behind.

#ifndef GDP_IO_H_
#define GDP_IO_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gdp/diffusion.h"
#include "gdp/discrete_diffusion.h"
#include "gdp/generator.h"
#include "gdp/simbench.h"
#include "gdp/transfer.h"

namespace gdp {

// Malformed input files and configs.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Shortest text that parses back to the same double (at most 17 significant
// digits).
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws FormatError naming the column when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source = "<csv>");
CsvTable read_csv(const std::filesystem::path& path);
std::string to_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Numeric view of the named columns; a non-numeric cell raises FormatError
// with its (1-based) data row and column name.
Matrix numeric_columns(const CsvTable& table, const std::vector<std::string>& names,
                       const std::string& source = "<csv>");

// Sorted distinct labels (numerically when every label is a number) and the
// 0-based code of every row.
struct CategoricalColumn {
  std::vector<std::string> labels;
  std::vector<int> codes;
};
CategoricalColumn categorical_column(const CsvTable& table, const std::string& name);

struct LoadedDataset {
  Dataset data;
  std::vector<std::string> predictor_names;
  std::vector<std::string> response_names;
};

struct LoadedCategoricalDataset {
  CategoricalDataset data;
  std::vector<std::string> predictor_names;
  std::string response_name;
  std::vector<std::string> label_names;
};

// Predictors are every column other than the target columns.
LoadedDataset load_dataset(const std::filesystem::path& path,
                           const std::vector<std::string>& target_cols);
LoadedCategoricalDataset load_categorical_dataset(const std::filesystem::path& path,
                                                  const std::string& target_col);

void save_dataset(const std::filesystem::path& path, const Dataset& data,
                  const std::vector<std::string>& predictor_names,
                  const std::vector<std::string>& response_names);

// Column names x1..xp.
std::vector<std::string> default_predictor_names(int p);

struct CheckpointMeta {
  std::vector<std::string> predictor_names;
  std::vector<std::string> response_names;
  std::vector<std::string> label_names;  // discrete only
};

struct Checkpoint {
  static constexpr int kFormatVersion = 1;
  std::variant<ConditionalGenerator, DiscreteGenerator> generator;
  CheckpointMeta meta;

  bool discrete() const { return std::holds_alternative<DiscreteGenerator>(generator); }
};

nlohmann::json checkpoint_to_json(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_json(const nlohmann::json& doc);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Flat JSON document combining simulation, training and transfer settings.
struct RunConfig {
  SimConfig sim;
  TrainConfig train;
  TransferPlan transfer;
  bool full_fidelity = false;

  // The shared seed (sim.seed and train.seed).
  void set_seed(std::uint64_t seed);
};

// Unknown keys raise FormatError naming the key.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& config);

// Applies GDP_SEED from the environment when set.
void apply_env_overrides(RunConfig& config);

}  // namespace gdp

#endif  // GDP_IO_H_
