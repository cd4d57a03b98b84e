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

#include "gdp/cli.h"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gdp/diffusion.h"
#include "gdp/discrete_diffusion.h"
#include "gdp/io.h"
#include "gdp/metrics.h"
#include "gdp/predict.h"
#include "gdp/simbench.h"
#include "gdp/transfer.h"

namespace gdp {
namespace {

// Bad flag values that CLI11 cannot check on its own.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr const char* kConditionIndex = "condition_index";
constexpr const char* kSampleIndex = "sample_index";

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

RunConfig resolve_config(const std::string& path, const std::optional<std::uint64_t>& seed) {
  RunConfig cfg = path.empty() ? RunConfig{} : load_run_config(path);
  apply_env_overrides(cfg);
  if (seed) cfg.set_seed(*seed);
  return cfg;
}

std::string pinball_name(double alpha) { return LossSpec::pinball(alpha).to_string(); }

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string case_name = "I";
  std::optional<std::size_t> n;
  std::optional<int> p;
  std::optional<double> rho;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string quantiles_out;
  std::string beta_out;
};

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  RunConfig cfg = resolve_config(a.config, a.seed);
  SimConfig sim = cfg.sim;
  sim.sim_case = sim_case_from_string(a.case_name);
  if (a.n) sim.n = *a.n;
  if (a.p) sim.p = *a.p;
  if (a.rho) sim.rho = *a.rho;
  try {
    sim.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Rng rng = make_rng(sim.seed, {11});
  const SimDataset data = simulate(sim, rng);
  const std::vector<std::string> names = default_predictor_names(sim.p);

  CsvTable table;
  table.header = names;
  table.header.push_back("y");
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) row.push_back(format_double(data.x(i, j)));
    row.push_back(format_double(data.y[i]));
    table.rows.push_back(std::move(row));
  }
  std::string quantiles;
  if (!a.quantiles_out.empty()) {
    const Matrix q = oracle_quantiles(data.x, data.beta, sim.alphas);
    CsvTable qt;
    for (double alpha : sim.alphas) qt.header.push_back(pinball_name(alpha));
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      std::vector<std::string> row;
      for (Eigen::Index j = 0; j < q.cols(); ++j) row.push_back(format_double(q(i, j)));
      qt.rows.push_back(std::move(row));
    }
    quantiles = to_csv(qt);
  }
  std::string beta;
  if (!a.beta_out.empty()) {
    beta = nlohmann::json{{"case", to_string(sim.sim_case)},
                          {"rho", data.rho},
                          {"beta", std::vector<double>(data.beta.data(),
                                                       data.beta.data() + data.beta.size())}}
               .dump(2) + "\n";
  }
  emit(a.out, to_csv(table), out);
  if (!a.quantiles_out.empty()) write_file_atomic(a.quantiles_out, quantiles);
  if (!a.beta_out.empty()) write_file_atomic(a.beta_out, beta);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::vector<std::string> target_cols{"y"};
  std::string kind = "gaussian";
  std::string role = "standalone";
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void report_training(const TrainingInfo& info, std::ostream& err) {
  err << "trained " << info.epochs_run << " epochs on " << info.n_train
      << " rows; best validation loss " << info.final_val_loss << "\n";
}

int do_train(const TrainArgs& a, std::ostream& err) {
  const RunConfig cfg = resolve_config(a.config, a.seed);
  Role role = Role::kStandalone;
  try {
    role = role_from_string(a.role);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (role == Role::kFinetuned) throw UsageError("use the finetune subcommand for role finetuned");
  Checkpoint ckpt;
  if (a.kind == "gaussian") {
    const LoadedDataset loaded = load_dataset(a.data, a.target_cols);
    ConditionalGenerator gen = train(loaded.data, cfg.train, role);
    report_training(gen.info, err);
    ckpt.generator = std::move(gen);
    ckpt.meta.predictor_names = loaded.predictor_names;
    ckpt.meta.response_names = loaded.response_names;
  } else if (a.kind == "discrete") {
    if (a.target_cols.size() != 1) throw UsageError("discrete training takes one target column");
    const LoadedCategoricalDataset loaded = load_categorical_dataset(a.data, a.target_cols.front());
    DiscreteGenerator gen = train_discrete(loaded.data, cfg.train, role);
    report_training(gen.info, err);
    ckpt.generator = std::move(gen);
    ckpt.meta.predictor_names = loaded.predictor_names;
    ckpt.meta.response_names = {loaded.response_name};
    ckpt.meta.label_names = loaded.label_names;
  } else {
    throw UsageError("--kind must be gaussian or discrete");
  }
  save_checkpoint(a.out, ckpt);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct FinetuneArgs {
  std::string source;
  std::string data;
  std::vector<std::string> target_cols{"y"};
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int do_finetune(const FinetuneArgs& a, std::ostream& err) {
  const RunConfig cfg = resolve_config(a.config, a.seed);
  const Checkpoint source = load_checkpoint(a.source);
  const CsvTable table = read_csv(a.data);
  Checkpoint result;
  result.meta = source.meta;
  for (const auto& name : source.meta.predictor_names) {
    if (std::find(table.header.begin(), table.header.end(), name) == table.header.end()) {
      throw TransferIncompatible("target data lacks predictor column '" + name +
                                 "' used by the source generator");
    }
  }
  const Matrix x = numeric_columns(table, source.meta.predictor_names, a.data);
  if (const auto* gen = std::get_if<ConditionalGenerator>(&source.generator)) {
    Dataset data{x, numeric_columns(table, a.target_cols, a.data)};
    if (a.target_cols.size() != source.meta.response_names.size()) {
      throw TransferIncompatible("target has " + std::to_string(a.target_cols.size()) +
                                 " response columns, source generator has " +
                                 std::to_string(source.meta.response_names.size()));
    }
    ConditionalGenerator tuned = finetune_target(*gen, cfg.transfer, data, cfg.train);
    report_training(tuned.info, err);
    result.generator = std::move(tuned);
    result.meta.response_names = a.target_cols;
  } else {
    const auto& dgen = std::get<DiscreteGenerator>(source.generator);
    if (a.target_cols.size() != 1) throw UsageError("discrete fine-tuning takes one target column");
    const std::size_t col = table.column(a.target_cols.front());
    std::map<std::string, int> code;
    for (std::size_t i = 0; i < source.meta.label_names.size(); ++i) {
      code[source.meta.label_names[i]] = static_cast<int>(i);
    }
    CategoricalDataset data{x, {}};
    for (const auto& row : table.rows) {
      auto it = code.find(row[col]);
      if (it == code.end()) {
        throw TransferIncompatible("target label '" + row[col] + "' is not a source category");
      }
      data.labels.push_back(it->second);
    }
    DiscreteGenerator tuned = finetune_target(dgen, cfg.transfer, data, cfg.train);
    report_training(tuned.info, err);
    result.generator = std::move(tuned);
  }
  save_checkpoint(a.out, result);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string checkpoint;
  std::string conditions;
  int m = 1000;
  int stride = 1;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.m < 1) throw UsageError("--m must be >= 1");
  RunConfig cfg;
  apply_env_overrides(cfg);
  const std::uint64_t seed = a.seed.value_or(cfg.sim.seed);
  const Checkpoint ckpt = load_checkpoint(a.checkpoint);
  const CsvTable table = read_csv(a.conditions);
  const Matrix x = numeric_columns(table, ckpt.meta.predictor_names, a.conditions);
  std::vector<SyntheticSampleSet> sets(static_cast<std::size_t>(x.rows()));
  if (const auto* gen = std::get_if<ConditionalGenerator>(&ckpt.generator)) {
    if (gen->schedule.steps() % a.stride != 0 || a.stride < 1) {
      throw UsageError("--stride must divide the number of diffusion steps (" +
                       std::to_string(gen->schedule.steps()) + ")");
    }
  }
  parallel_for(
      sets.size(),
      [&](std::size_t i) {
        const Vector row = x.row(static_cast<Eigen::Index>(i)).transpose();
        const std::span<const double> xs(row.data(), row.size());
        const SamplingOptions options{a.stride, seed, i};
        if (const auto* gen = std::get_if<ConditionalGenerator>(&ckpt.generator)) {
          sets[i] = sample(*gen, xs, a.m, options);
        } else {
          sets[i] = sample_discrete(std::get<DiscreteGenerator>(ckpt.generator), xs, a.m, options);
        }
      },
      a.threads);

  CsvTable result;
  result.header = {kConditionIndex, kSampleIndex};
  result.header.insert(result.header.end(), ckpt.meta.response_names.begin(),
                       ckpt.meta.response_names.end());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t k = 0; k < sets[i].size(); ++k) {
      std::vector<std::string> row{std::to_string(i), std::to_string(k)};
      if (sets[i].categorical()) {
        const int label = sets[i].labels()[k];
        row.push_back(ckpt.meta.label_names.empty() ? std::to_string(label)
                                                    : ckpt.meta.label_names.at(static_cast<std::size_t>(label)));
      } else {
        const Matrix& v = sets[i].values();
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
          row.push_back(format_double(v(static_cast<Eigen::Index>(k), j)));
        }
      }
      result.rows.push_back(std::move(row));
    }
  }
  emit(a.out, to_csv(result), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  std::string samples;
  std::vector<std::string> losses;
  std::string out;
};

int do_predict(const PredictArgs& a, std::ostream& out) {
  std::vector<LossSpec> losses;
  for (const auto& text : a.losses) {
    try {
      losses.push_back(LossSpec::parse(text));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--loss: ") + e.what());
    }
  }
  const CsvTable table = read_csv(a.samples);
  const std::size_t cond_col = table.column(kConditionIndex);
  std::vector<std::string> responses;
  for (const auto& h : table.header) {
    if (h != kConditionIndex && h != kSampleIndex) responses.push_back(h);
  }
  if (responses.empty()) throw FormatError(a.samples + ": no response columns");

  // Group rows by condition in order of first appearance.
  std::vector<std::string> conditions;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& c = table.rows[r][cond_col];
    auto [it, inserted] = groups.try_emplace(c);
    if (inserted) conditions.push_back(c);
    it->second.push_back(r);
  }

  const bool needs_numeric = std::any_of(losses.begin(), losses.end(), [](const LossSpec& l) {
    return l.kind != LossKind::kZeroOne;
  });
  const bool needs_labels = std::any_of(losses.begin(), losses.end(), [](const LossSpec& l) {
    return l.kind == LossKind::kZeroOne;
  });
  Matrix values;
  if (needs_numeric) values = numeric_columns(table, responses, a.samples);
  CategoricalColumn labels;
  if (needs_labels) {
    if (responses.size() != 1) throw UsageError("zero_one loss needs a single response column");
    labels = categorical_column(table, responses.front());
  }

  CsvTable result;
  result.header = {kConditionIndex};
  for (const auto& loss : losses) {
    if (loss.kind == LossKind::kZeroOne || responses.size() == 1) {
      result.header.push_back(loss.to_string());
    } else {
      for (const auto& r : responses) result.header.push_back(loss.to_string() + "[" + r + "]");
    }
  }
  for (const auto& c : conditions) {
    const std::vector<std::size_t>& rows = groups[c];
    std::vector<std::string> line{c};
    for (const auto& loss : losses) {
      SyntheticSampleSet set;
      if (loss.kind == LossKind::kZeroOne) {
        std::vector<int> codes;
        for (std::size_t r : rows) codes.push_back(labels.codes[r]);
        set.payload = std::move(codes);
        const Prediction pred = gdp_point(set, loss);
        line.push_back(labels.labels.at(static_cast<std::size_t>(std::get<int>(pred.value))));
      } else {
        Matrix v(static_cast<Eigen::Index>(rows.size()), values.cols());
        for (std::size_t k = 0; k < rows.size(); ++k) {
          v.row(static_cast<Eigen::Index>(k)) = values.row(static_cast<Eigen::Index>(rows[k]));
        }
        set.payload = std::move(v);
        const Prediction pred = gdp_point(set, loss);
        const Vector& theta = std::get<Vector>(pred.value);
        for (Eigen::Index j = 0; j < theta.size(); ++j) line.push_back(format_double(theta[j]));
      }
    }
    result.rows.push_back(std::move(line));
  }
  emit(a.out, to_csv(result), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string pred;
  std::string truth;
  std::string kind = "regression";
  std::vector<std::string> columns;
  std::string out;
};

int do_eval(const EvalArgs& a, std::ostream& out) {
  const CsvTable pred = read_csv(a.pred);
  const CsvTable truth = read_csv(a.truth);
  if (pred.rows.size() != truth.rows.size()) {
    throw FormatError("prediction file has " + std::to_string(pred.rows.size()) +
                      " rows, truth file has " + std::to_string(truth.rows.size()));
  }
  std::vector<std::string> cols = a.columns;
  if (cols.empty()) {
    for (const auto& h : pred.header) {
      if (h == kConditionIndex || h == kSampleIndex) continue;
      if (std::find(truth.header.begin(), truth.header.end(), h) != truth.header.end()) {
        cols.push_back(h);
      }
    }
  }
  if (cols.empty()) throw FormatError("prediction and truth files share no columns");

  std::ostringstream report;
  report << "metric";
  for (const auto& c : cols) report << ',' << c;
  report << ",Average\n";
  auto row = [&report](const std::string& name, const std::vector<double>& values) {
    report << name;
    double total = 0.0;
    for (double v : values) {
      report << ',' << format_double(v);
      total += v;
    }
    report << ',' << format_double(total / static_cast<double>(values.size())) << '\n';
  };
  if (a.kind == "regression") {
    const Matrix p = numeric_columns(pred, cols, a.pred);
    const Matrix t = numeric_columns(truth, cols, a.truth);
    std::vector<double> r, m;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const Vector pj = p.col(j);
      const Vector tj = t.col(j);
      r.push_back(rmse({pj.data(), static_cast<std::size_t>(pj.size())},
                       {tj.data(), static_cast<std::size_t>(tj.size())}));
      m.push_back(mad({pj.data(), static_cast<std::size_t>(pj.size())},
                      {tj.data(), static_cast<std::size_t>(tj.size())}));
    }
    row("RMSE", r);
    row("MAD", m);
  } else if (a.kind == "classification") {
    std::vector<double> acc, kap;
    for (const auto& c : cols) {
      const std::size_t pc = pred.column(c);
      const std::size_t tc = truth.column(c);
      std::map<std::string, int> code;
      auto encode = [&code](const std::string& s) {
        return code.try_emplace(s, static_cast<int>(code.size())).first->second;
      };
      std::vector<int> pl, tl;
      for (std::size_t i = 0; i < pred.rows.size(); ++i) {
        pl.push_back(encode(pred.rows[i][pc]));
        tl.push_back(encode(truth.rows[i][tc]));
      }
      acc.push_back(accuracy(pl, tl));
      kap.push_back(cohen_kappa(pl, tl));
    }
    row("accuracy", acc);
    row("kappa", kap);
  } else {
    throw UsageError("--kind must be regression or classification");
  }
  emit(a.out, report.str(), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchmarkArgs {
  std::string case_name = "I";
  std::string config;
  std::vector<std::uint64_t> seeds;
  bool full_fidelity = false;
  std::optional<unsigned> threads;
  std::string out;
};

int do_benchmark(const BenchmarkArgs& a, std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(a.config, std::nullopt);
  cfg.sim.sim_case = sim_case_from_string(a.case_name);
  if (a.full_fidelity) cfg.sim.set_full_fidelity();
  if (a.threads) cfg.sim.threads = *a.threads;
  std::vector<std::uint64_t> seeds = a.seeds;
  if (seeds.empty()) seeds.push_back(cfg.sim.seed);

  std::ostringstream csv;
  std::vector<BenchmarkResult> results;
  for (std::uint64_t seed : seeds) {
    cfg.set_seed(seed);
    BenchmarkResult r = run_benchmark(cfg.sim, cfg.train);
    err << "seed " << seed << ": " << r.training.epochs_run << " epochs, train "
        << r.train_seconds << " s, sampling " << r.sample_seconds << " s\n";
    out << report_table(r, "Case " + to_string(cfg.sim.sim_case) + " seed " + std::to_string(seed))
        << "\n";
    std::istringstream lines(report_csv(r));
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
      if (header) {
        if (results.empty()) csv << "seed," << line << '\n';
        header = false;
      } else {
        csv << seed << ',' << line << '\n';
      }
    }
    results.push_back(std::move(r));
  }
  if (results.size() > 1) {
    BenchmarkResult mean = results.front();
    for (auto* report : {&mean.rmse, &mean.mad}) {
      for (auto& [alpha, value] : report->by_alpha) value = 0.0;
    }
    for (const auto& r : results) {
      for (auto& [alpha, value] : mean.rmse.by_alpha) value += r.rmse.by_alpha.at(alpha) / results.size();
      for (auto& [alpha, value] : mean.mad.by_alpha) value += r.mad.by_alpha.at(alpha) / results.size();
    }
    out << report_table(mean, "Case " + to_string(cfg.sim.sim_case) + " mean") << "\n";
    std::istringstream lines(report_csv(mean));
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) csv << "mean," << line << '\n';
  }
  if (!a.out.empty()) write_file_atomic(a.out, csv.str());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generative distribution prediction with conditional diffusion models", "gdp"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw a dataset from the benchmark model");
  simulate_cmd->add_option("--case", sim.case_name, "I or II")->check(CLI::IsMember({"I", "II"}));
  simulate_cmd->add_option("--n", sim.n, "Number of rows");
  simulate_cmd->add_option("--p", sim.p, "Number of predictors");
  simulate_cmd->add_option("--rho", sim.rho, "AR(1) correlation for case II");
  simulate_cmd->add_option("--seed", sim.seed, "Random seed");
  simulate_cmd->add_option("--config", sim.config, "JSON run config");
  simulate_cmd->add_option("--out", sim.out, "Output CSV ('-' for stdout)")->required();
  simulate_cmd->add_option("--quantiles-out", sim.quantiles_out, "CSV of oracle quantiles");
  simulate_cmd->add_option("--beta-out", sim.beta_out, "JSON with the drawn coefficients");

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train a conditional generator");
  train_cmd->add_option("--data", tr.data, "Training CSV")->required();
  train_cmd->add_option("--target-col", tr.target_cols, "Response column(s)");
  train_cmd->add_option("--kind", tr.kind, "gaussian or discrete")
      ->check(CLI::IsMember({"gaussian", "discrete"}));
  train_cmd->add_option("--role", tr.role, "standalone or source");
  train_cmd->add_option("--config", tr.config, "JSON run config");
  train_cmd->add_option("--seed", tr.seed, "Random seed");
  train_cmd->add_option("--out", tr.out, "Checkpoint path")->required();

  FinetuneArgs ft;
  auto* finetune_cmd = app.add_subcommand("finetune", "Fine-tune a source generator on target data");
  finetune_cmd->add_option("--source", ft.source, "Source checkpoint")->required();
  finetune_cmd->add_option("--data", ft.data, "Target CSV")->required();
  finetune_cmd->add_option("--target-col", ft.target_cols, "Response column(s)");
  finetune_cmd->add_option("--config", ft.config, "JSON run config (transfer keys)");
  finetune_cmd->add_option("--seed", ft.seed, "Random seed");
  finetune_cmd->add_option("--out", ft.out, "Checkpoint path")->required();

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Draw m synthetic responses per condition");
  generate_cmd->add_option("--checkpoint", gen.checkpoint, "Generator checkpoint")->required();
  generate_cmd->add_option("--conditions", gen.conditions, "CSV of predictor rows")->required();
  generate_cmd->add_option("--m", gen.m, "Samples per condition");
  generate_cmd->add_option("--stride", gen.stride, "Reverse-step stride (Gaussian only)");
  generate_cmd->add_option("--seed", gen.seed, "Random seed");
  generate_cmd->add_option("--threads", gen.threads, "Worker threads (0 = all cores)");
  generate_cmd->add_option("--out", gen.out, "Output CSV ('-' for stdout)");

  PredictArgs pr;
  auto* predict_cmd = app.add_subcommand("predict", "Minimize an empirical loss over samples");
  predict_cmd->add_option("--samples", pr.samples, "CSV written by generate")->required();
  predict_cmd
      ->add_option("--loss", pr.losses,
                   "squared | absolute | pinball:<alpha> | zero_one | medoid:<euclidean|cosine>")
      ->required();
  predict_cmd->add_option("--out", pr.out, "Output CSV ('-' for stdout)");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against truth");
  eval_cmd->add_option("--pred", ev.pred, "Prediction CSV")->required();
  eval_cmd->add_option("--truth", ev.truth, "Truth CSV")->required();
  eval_cmd->add_option("--kind", ev.kind, "regression or classification")
      ->check(CLI::IsMember({"regression", "classification"}));
  eval_cmd->add_option("--columns", ev.columns, "Columns to score (default: shared)");
  eval_cmd->add_option("--out", ev.out, "Report CSV ('-' for stdout)");

  BenchmarkArgs bm;
  auto* benchmark_cmd = app.add_subcommand("benchmark", "Run the quantile regression benchmark");
  benchmark_cmd->add_option("--case", bm.case_name, "I or II")->check(CLI::IsMember({"I", "II"}));
  benchmark_cmd->add_option("--config", bm.config, "JSON run config");
  benchmark_cmd->add_option("--seed", bm.seeds, "Seed(s); one run per seed");
  benchmark_cmd->add_flag("--full-fidelity", bm.full_fidelity, "All test rows, stride 1");
  benchmark_cmd->add_option("--threads", bm.threads, "Worker threads (0 = all cores)");
  benchmark_cmd->add_option("--out", bm.out, "Report CSV");

  std::vector<const char*> argv{"gdp"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate_cmd->parsed()) return do_simulate(sim, out);
    if (train_cmd->parsed()) return do_train(tr, err);
    if (finetune_cmd->parsed()) return do_finetune(ft, err);
    if (generate_cmd->parsed()) return do_generate(gen, out);
    if (predict_cmd->parsed()) return do_predict(pr, out);
    if (eval_cmd->parsed()) return do_eval(ev, out);
    if (benchmark_cmd->parsed()) return do_benchmark(bm, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitUsage;
}

}  // namespace gdp
