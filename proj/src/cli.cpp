#include "momsjump/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "momsjump/exact.hpp"
#include "momsjump/io.hpp"
#include "momsjump/linmodel.hpp"
#include "momsjump/sampler.hpp"

namespace momsjump {

namespace {

RegressionData<double> load(const CommandOptions& opts, std::ostream& log) {
  if (opts.data_path.empty()) throw ConfigError("--data is required");
  auto data = load_data_file(opts.data_path, opts.response);
  for (const auto& w : data.warnings) log << "warning: " << w << "\n";
  return data;
}

std::filesystem::path prepare_out(const CommandOptions& opts) {
  std::filesystem::path dir(opts.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + opts.out_dir + "': " + ec.message());
  return dir;
}

std::string cell(double v, int decimals) {
  if (!std::isfinite(v)) return ".";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

void cmd_enumerate(const CommandOptions& opts, std::ostream& log) {
  opts.config.validate();
  const auto data = load(opts, log);
  const auto dir = prepare_out(opts);
  QuadratureConfig quad;
  quad.tolerance = opts.config.quad_tolerance;

  const auto scores = enumerate(data, quad);
  const auto summary = summarize_exact(scores, data, quad, static_cast<std::size_t>(opts.config.top_k));

  SamplerConfig cfg = opts.config;
  cfg.method = Method::enumerate;
  write_json((dir / "config.json").string(), to_json(cfg));
  write_predictors_csv((dir / "predictors.csv").string(), data.predictor_names, summary);
  write_json((dir / "models.json").string(), models_to_json(data.predictor_names, summary));
  write_json((dir / "summary.json").string(), exact_summary_to_json(data.predictor_names, summary));
  log << "enumerated " << scores.size() << " models; results in " << dir.string() << "\n";
}

void cmd_sample(const CommandOptions& opts, std::ostream& log) {
  const SamplerConfig& cfg = opts.config;
  cfg.validate();
  if (cfg.method == Method::enumerate) throw ConfigError("sample requires --method moms or rjmcmc");
  const auto data = load(opts, log);
  const auto dir = prepare_out(opts);

  const auto outputs = run_chains(data, cfg);
  const auto summary = summarize_chains(outputs, static_cast<std::size_t>(cfg.top_k));
  const std::string method = to_string(cfg.method);

  write_json((dir / "config.json").string(), to_json(cfg));
  for (const auto& o : outputs)
    write_chain_csv((dir / ("chain_" + std::to_string(o.chain_id) + ".csv")).string(), o, method);
  write_predictors_csv((dir / "predictors.csv").string(), data.predictor_names, summary.posterior);
  write_json((dir / "summary.json").string(), chain_summary_to_json(data.predictor_names, summary, method));
  log << method << ": " << outputs.size() << " chains x " << cfg.iterations << " draws; results in " << dir.string()
      << "\n";
}

void cmd_diagnose(const CommandOptions& opts, std::ostream& log) {
  if (opts.chain_files.empty()) throw ConfigError("diagnose needs at least one chain file");
  std::vector<ChainOutput> outputs;
  std::string method;
  for (const auto& f : opts.chain_files) {
    auto cf = read_chain_csv(f);
    if (!outputs.empty() && cf.output.predictor_names != outputs.front().predictor_names)
      throw DataError(f + ": predictor columns differ from '" + opts.chain_files.front() + "'");
    if (method.empty()) method = cf.method;
    outputs.push_back(std::move(cf.output));
  }
  const auto summary = summarize_chains(outputs, static_cast<std::size_t>(opts.config.top_k));
  const auto dir = prepare_out(opts);
  write_json((dir / "diagnostics.json").string(),
             chain_summary_to_json(outputs.front().predictor_names, summary, method));
  log << "diagnosed " << outputs.size() << " chain file(s); results in " << (dir / "diagnostics.json").string()
      << "\n";
}

std::string bench_table(const std::vector<std::string>& names, const ChainSummary& moms, const ChainSummary& rj) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s %12s %12s %14s %14s\n", "", "ESS/iter", "", "ESS/second", "");
  os << buf;
  std::snprintf(buf, sizeof buf, "%-8s %12s %12s %14s %14s\n", "beta", "MoMS", "RJMCMC", "MoMS", "RJMCMC");
  os << buf;
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto e = static_cast<Eigen::Index>(j);
    std::snprintf(buf, sizeof buf, "%-8s %12s %12s %14s %14s\n", names[j].c_str(), cell(moms.ess_per_iter(e), 3).c_str(),
                  cell(rj.ess_per_iter(e), 3).c_str(), cell(moms.ess_per_sec(e), 0).c_str(),
                  cell(rj.ess_per_sec(e), 0).c_str());
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "wall time (s): MoMS %.3f, RJMCMC %.3f\n", moms.wall_time, rj.wall_time);
  os << buf;
  return os.str();
}

void cmd_bench(const CommandOptions& opts, std::ostream& log) {
  opts.config.validate();
  const auto data = load(opts, log);
  const auto dir = prepare_out(opts);

  SamplerConfig moms_cfg = opts.config;
  moms_cfg.method = Method::moms;
  SamplerConfig rj_cfg = opts.config;
  rj_cfg.method = Method::rjmcmc;

  const auto moms_out = run_chains(data, moms_cfg);
  const auto rj_out = run_chains(data, rj_cfg);
  const auto moms = summarize_chains(moms_out, static_cast<std::size_t>(opts.config.top_k));
  const auto rj = summarize_chains(rj_out, static_cast<std::size_t>(opts.config.top_k));

  const std::string table = bench_table(data.predictor_names, moms, rj);
  write_json((dir / "config.json").string(), to_json(opts.config));
  write_text((dir / "bench.txt").string(), table);
  write_json((dir / "bench.json").string(),
             {{"moms", chain_summary_to_json(data.predictor_names, moms, "moms")},
              {"rjmcmc", chain_summary_to_json(data.predictor_names, rj, "rjmcmc")}});
  log << table;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian variable selection for linear regression: enumeration, MoMS and reversible jump"};
  app.name("momsjump");
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
  std::optional<long> iterations, warmup;
  std::optional<int> chains, top_k;

  auto add_common = [&](CLI::App* sub, bool needs_data) {
    if (needs_data) {
      sub->add_option("--data", opts.data_path, "CSV file with a header row")->required();
      sub->add_option("--response", opts.response, "response column (default: last column)");
    }
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--top-k", top_k, "number of top models to report");
  };
  auto add_sampler = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "base random seed");
    sub->add_option("--iterations", iterations, "post-warmup iterations per chain");
    sub->add_option("--warmup", warmup, "warmup iterations");
    sub->add_option("--chains", chains, "independent chains");
  };

  auto* en = app.add_subcommand("enumerate", "exact enumeration of all 2^p models");
  add_common(en, true);
  auto* sa = app.add_subcommand("sample", "run MoMS or reversible-jump chains");
  add_common(sa, true);
  add_sampler(sa);
  sa->add_option("--method", method, "moms | rjmcmc");
  auto* di = app.add_subcommand("diagnose", "recompute indicator diagnostics from chain files");
  add_common(di, false);
  di->add_option("chain_files", opts.chain_files, "chain CSV files")->required();
  auto* be = app.add_subcommand("bench", "matched MoMS vs reversible-jump efficiency comparison");
  add_common(be, true);
  add_sampler(be);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  try {
    if (!config_path.empty()) opts.config = config_from_file(config_path, opts.config);
    if (seed) opts.config.seed = *seed;
    if (method) opts.config.method = parse_method(*method);
    if (iterations) opts.config.iterations = *iterations;
    if (warmup) opts.config.warmup = *warmup;
    if (chains) opts.config.chains = *chains;
    if (top_k) opts.config.top_k = *top_k;

    if (en->parsed()) cmd_enumerate(opts, out);
    else if (sa->parsed()) cmd_sample(opts, out);
    else if (di->parsed()) cmd_diagnose(opts, out);
    else if (be->parsed()) cmd_bench(opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::numerical);
  }
  return 0;
}

}  // namespace momsjump
