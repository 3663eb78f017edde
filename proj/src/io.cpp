#include "momsjump/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "momsjump/errors.hpp"

namespace momsjump {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::json bf_to_json(const InclusionBayesFactor& bf) {
  if (!bf.saturated) return bf.value;
  return bf.value > 0 ? "inf" : "-inf";
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + std::to_string(v[i]);
  return s;
}

std::vector<long> split_longs(const std::string& s) {
  std::vector<long> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) out.push_back(std::stol(tok));
  return out;
}

}  // namespace

void write_json(const std::string& path, const nlohmann::json& j) { open_out(path) << j.dump(2) << "\n"; }

void write_text(const std::string& path, const std::string& text) { open_out(path) << text; }

void write_predictors_csv(const std::string& path, const std::vector<std::string>& names,
                          const PosteriorSummary& summary) {
  auto out = open_out(path);
  out << "name,pip,bma_mean,bma_sd\n";
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto e = static_cast<Eigen::Index>(j);
    out << names[j] << "," << fmt17(summary.pip(e)) << "," << fmt17(summary.bma_mean(e)) << ","
        << fmt17(summary.bma_sd(e)) << "\n";
  }
}

nlohmann::json models_to_json(const std::vector<std::string>& names, const PosteriorSummary& summary) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto& [gamma, prob] : summary.top_models) {
    nlohmann::json included = nlohmann::json::array();
    for (auto j : gamma.included()) included.push_back(names[static_cast<std::size_t>(j)]);
    models.push_back({{"gamma", gamma.to_string()}, {"included", included}, {"probability", prob}});
  }
  return {{"predictors", names}, {"models", models}};
}

nlohmann::json exact_summary_to_json(const std::vector<std::string>& names, const PosteriorSummary& summary) {
  nlohmann::json preds = nlohmann::json::array();
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto e = static_cast<Eigen::Index>(j);
    preds.push_back({{"name", names[j]},
                     {"pip", summary.pip(e)},
                     {"bma_mean", summary.bma_mean(e)},
                     {"bma_sd", summary.bma_sd(e)},
                     {"bf_incl", bf_to_json(inclusion_bayes_factor(summary.pip(e), 0.5))}});
  }
  nlohmann::json median = nlohmann::json::array();
  for (auto j : median_probability_model(summary.pip).included()) median.push_back(names[static_cast<std::size_t>(j)]);
  return {{"method", "enumerate"}, {"predictors", preds}, {"median_probability_model", median}};
}

nlohmann::json chain_summary_to_json(const std::vector<std::string>& names, const ChainSummary& summary,
                                     const std::string& method) {
  nlohmann::json preds = nlohmann::json::array();
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto e = static_cast<Eigen::Index>(j);
    const auto& s = summary.indicators[j];
    nlohmann::json row = {{"name", names[j]},
                          {"pip", summary.posterior.pip(e)},
                          {"bma_mean", summary.posterior.bma_mean(e)},
                          {"bma_sd", summary.posterior.bma_sd(e)},
                          {"bma_mean_mcse", summary.bma_mean_mcse(e)},
                          {"bf_incl", bf_to_json(summary.bf_incl[j])},
                          {"accept_rate", number_or_null(summary.accept_rate[j])}};
    if (s.defined) {
      row["ess"] = s.ess;
      row["ess_per_iter"] = summary.ess_per_iter(e);
      row["ess_per_sec"] = number_or_null(summary.ess_per_sec(e));
      row["mcse"] = s.mcse;
      if (s.super_efficient) row["super_efficient"] = true;
    } else {
      row["ess"] = nullptr;
      row["ess_per_iter"] = nullptr;
      row["ess_per_sec"] = nullptr;
      row["mcse"] = nullptr;
      row["reason"] = s.reason;
    }
    preds.push_back(std::move(row));
  }
  nlohmann::json median = nlohmann::json::array();
  for (auto j : median_probability_model(summary.posterior.pip).included())
    median.push_back(names[static_cast<std::size_t>(j)]);
  return {{"method", method},
          {"chains", summary.chains},
          {"draws", summary.draws},
          {"wall_time", summary.wall_time},
          {"predictors", preds},
          {"median_probability_model", median},
          {"top_models", models_to_json(names, summary.posterior)["models"]}};
}

void write_chain_csv(const std::string& path, const ChainOutput& o, const std::string& method) {
  auto out = open_out(path);
  out << "# chain=" << o.chain_id << " seed=" << o.seed << " method=" << method << " wall_time=" << fmt17(o.wall_time)
      << " accept=" << join(o.accept_counts) << " propose=" << join(o.propose_counts) << "\n";
  const auto& names = o.predictor_names;
  for (const auto& n : names) out << "gamma_" << n << ",";
  for (const auto& n : names) out << "beta_" << n << ",";
  out << "sigma2,g\n";
  std::string line;
  for (Eigen::Index t = 0; t < o.draws(); ++t) {
    line.clear();
    for (Eigen::Index j = 0; j < o.gamma_draws.cols(); ++j) line += o.gamma_draws(t, j) ? "1," : "0,";
    for (Eigen::Index j = 0; j < o.beta_draws.cols(); ++j) line += fmt17(o.beta_draws(t, j)) + ",";
    line += fmt17(o.sigma2_draws(t)) + "," + fmt17(o.g_draws(t)) + "\n";
    out << line;
  }
}

ChainFile read_chain_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open chain file '" + path + "'");
  ChainFile file;
  ChainOutput& o = file.output;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw DataError(path + ":" + std::to_string(line_no) + ": " + why);
  };

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string tok;
      try {
        while (ss >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) continue;
          const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
          if (key == "chain") o.chain_id = std::stoi(val);
          else if (key == "seed") o.seed = std::stoull(val);
          else if (key == "method") file.method = val;
          else if (key == "wall_time") o.wall_time = std::stod(val);
          else if (key == "accept") o.accept_counts = split_longs(val);
          else if (key == "propose") o.propose_counts = split_longs(val);
        }
      } catch (const std::exception&) {
        fail("malformed metadata line");
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) fail("expected " + std::to_string(header.size()) + " fields");
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      std::size_t used = 0;
      try {
        row[j] = std::stod(cells[j], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[j].size() || cells[j].empty()) fail("non-numeric field '" + cells[j] + "'");
    }
    rows.push_back(std::move(row));
  }
  if (header.size() < 2 || (header.size() - 2) % 2 != 0 || header[header.size() - 2] != "sigma2")
    throw DataError(path + ": missing or malformed header");
  const std::size_t p = (header.size() - 2) / 2;
  for (std::size_t j = 0; j < p; ++j) {
    if (header[j].rfind("gamma_", 0) != 0) throw DataError(path + ": header column " + header[j] + " is not gamma_*");
    o.predictor_names.push_back(header[j].substr(6));
  }
  const auto T = static_cast<Eigen::Index>(rows.size());
  const auto P = static_cast<Eigen::Index>(p);
  o.gamma_draws.resize(T, P);
  o.beta_draws.resize(T, P);
  o.sigma2_draws.resize(T);
  o.g_draws.resize(T);
  for (Eigen::Index t = 0; t < T; ++t) {
    const auto& r = rows[static_cast<std::size_t>(t)];
    for (Eigen::Index j = 0; j < P; ++j) {
      const double gv = r[static_cast<std::size_t>(j)];
      if (gv != 0.0 && gv != 1.0) throw DataError(path + ": indicator values must be 0 or 1");
      o.gamma_draws(t, j) = gv == 1.0 ? 1 : 0;
      o.beta_draws(t, j) = r[p + static_cast<std::size_t>(j)];
    }
    o.sigma2_draws(t) = r[2 * p];
    o.g_draws(t) = r[2 * p + 1];
  }
  if (o.accept_counts.size() != p) o.accept_counts.assign(p, 0);
  if (o.propose_counts.size() != p) o.propose_counts.assign(p, 0);
  o.degenerate_counts.assign(p, 0);
  return file;
}

}  // namespace momsjump
