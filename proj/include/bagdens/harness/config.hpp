#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "../estimator_spec.hpp"
#include "../kernels.hpp"
#include "../models.hpp"

namespace bagdens::harness {

//! Raised for anything wrong with a configuration (unknown ids, bad values,
//! missing seed); the CLI maps it to exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { mise, agg_curve, bands, curves };

inline std::string_view experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::mise: return "mise";
    case ExperimentKind::agg_curve: return "agg-curve";
    case ExperimentKind::bands: return "bands";
    case ExperimentKind::curves: return "curves";
  }
  return "mise";
}

inline ExperimentKind experiment_kind_from_name(std::string_view name) {
  if (name == "mise") return ExperimentKind::mise;
  if (name == "agg-curve") return ExperimentKind::agg_curve;
  if (name == "bands") return ExperimentKind::bands;
  if (name == "curves") return ExperimentKind::curves;
  throw config_error("unknown experiment '" + std::string(name) + "'");
}

//! The four band constructions the band experiment reports on.
enum class BandMethod { boot_hist, boot_fp, boot_kde, kde_sm };

inline std::string_view band_method_name(BandMethod method) {
  switch (method) {
    case BandMethod::boot_hist: return "boot-hist";
    case BandMethod::boot_fp: return "boot-fp";
    case BandMethod::boot_kde: return "boot-kde";
    case BandMethod::kde_sm: return "kde-sm";
  }
  return "boot-hist";
}

//! Parses a band method id; empty when the name is not one.
inline std::optional<BandMethod> band_method_from_name(std::string_view name) {
  if (name == "boot-hist") return BandMethod::boot_hist;
  if (name == "boot-fp") return BandMethod::boot_fp;
  if (name == "boot-kde") return BandMethod::boot_kde;
  if (name == "kde-sm") return BandMethod::kde_sm;
  return std::nullopt;
}

//! One experiment run, as assembled from a config file and CLI flags.
//! List fields left empty pick up per-experiment defaults in
//! finalize_config.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::mise;
  std::vector<std::string> models;
  std::vector<std::string> estimators;
  std::vector<std::size_t> sample_sizes;
  std::size_t replicates = 100;
  std::vector<std::size_t> ensemble_sizes;
  double alpha = 0.05;
  std::string kernel = "gaussian";
  std::string bandwidth_rule = "lscv";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;  // 0 picks one worker per available core
  std::string out;       // empty resolves to "<experiment>.csv"
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

template <class Int>
Int parse_integer(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw config_error("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::size_t> parse_size_list(std::string_view text, std::string_view what) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(text))
    out.push_back(parse_integer<std::size_t>(item, what));
  return out;
}

inline double parse_double(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  double value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw config_error("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

//! Applies one key/value pair; unknown keys are config errors.
inline void apply_key_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  const std::string_view k = detail::trim(key);
  const std::string_view v = detail::trim(value);
  if (k == "experiment") {
    cfg.kind = experiment_kind_from_name(v);
  } else if (k == "seed") {
    cfg.seed = detail::parse_integer<std::uint64_t>(v, "seed");
  } else if (k == "models") {
    cfg.models = detail::split_list(v);
  } else if (k == "estimators") {
    cfg.estimators = detail::split_list(v);
  } else if (k == "n") {
    cfg.sample_sizes = detail::parse_size_list(v, "sample size");
  } else if (k == "replicates") {
    cfg.replicates = detail::parse_integer<std::size_t>(v, "replicate count");
  } else if (k == "ensemble") {
    cfg.ensemble_sizes = detail::parse_size_list(v, "ensemble size");
  } else if (k == "alpha") {
    cfg.alpha = detail::parse_double(v, "alpha");
  } else if (k == "kernel") {
    cfg.kernel = std::string(v);
  } else if (k == "bandwidth") {
    cfg.bandwidth_rule = std::string(v);
  } else if (k == "threads") {
    cfg.threads = detail::parse_integer<unsigned>(v, "thread count");
  } else if (k == "out") {
    cfg.out = std::string(v);
  } else {
    throw config_error("unknown config key '" + std::string(k) + "'");
  }
}

//! Loads `key = value` lines (with # comments) over the current config.
inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    const std::size_t hash = text.find('#');
    if (hash != std::string_view::npos) text = text.substr(0, hash);
    text = detail::trim(text);
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos)
      throw config_error(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    apply_key_value(cfg, text.substr(0, eq), text.substr(eq + 1));
  }
}

//! Worker count to actually use for this run.
inline unsigned resolve_threads(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned cores = std::thread::hardware_concurrency();
  return cores > 0 ? cores : 1;
}

//! Fills per-experiment defaults and validates everything that can be
//! checked before any computation. Throws config_error on the first problem.
inline void finalize_config(ExperimentConfig& cfg) {
  if (!cfg.seed) throw config_error("no seed given; pass --seed or a 'seed' config entry");
  if (cfg.replicates < 1) throw config_error("replicate count must be at least 1");
  if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0)) throw config_error("alpha must lie in (0, 1)");
  if (cfg.bandwidth_rule != "lscv" && cfg.bandwidth_rule != "reference")
    throw config_error("bandwidth rule must be 'lscv' or 'reference'");
  try {
    Kernel::from_name(cfg.kernel);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }

  if (cfg.models.empty()) {
    if (cfg.kind == ExperimentKind::curves) {
      cfg.models = {"normal"};
    } else {
      for (const DensityModel& m : DensityModel::all()) cfg.models.emplace_back(m.name());
    }
  }
  for (const std::string& name : cfg.models) {
    try {
      DensityModel::from_name(name);
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }
  if (cfg.kind == ExperimentKind::curves && cfg.models.size() != 1)
    throw config_error("curve output needs exactly one model");

  if (cfg.sample_sizes.empty()) {
    cfg.sample_sizes =
        cfg.kind == ExperimentKind::mise ? std::vector<std::size_t>{50, 100, 200, 500, 1000}
                                         : std::vector<std::size_t>{500};
  }
  for (std::size_t n : cfg.sample_sizes)
    if (n < 1) throw config_error("sample sizes must be at least 1");
  if (cfg.kind == ExperimentKind::curves && cfg.sample_sizes.size() != 1)
    throw config_error("curve output needs exactly one sample size");

  if (cfg.ensemble_sizes.empty()) {
    cfg.ensemble_sizes = cfg.kind == ExperimentKind::agg_curve
                             ? std::vector<std::size_t>{1, 2, 5, 10, 20, 50, 100, 200}
                             : std::vector<std::size_t>{200};
  }
  for (std::size_t b : cfg.ensemble_sizes)
    if (b < 1) throw config_error("ensemble sizes must be at least 1");
  if (cfg.kind == ExperimentKind::agg_curve) {
    std::sort(cfg.ensemble_sizes.begin(), cfg.ensemble_sizes.end());
    cfg.ensemble_sizes.erase(std::unique(cfg.ensemble_sizes.begin(), cfg.ensemble_sizes.end()),
                             cfg.ensemble_sizes.end());
  } else if (cfg.ensemble_sizes.size() != 1) {
    throw config_error("only the agg-curve experiment accepts an ensemble size list");
  }

  if (cfg.estimators.empty()) {
    switch (cfg.kind) {
      case ExperimentKind::mise:
        cfg.estimators = {"hist", "fp", "kde", "baghist", "bagfp", "bagkde", "rash"};
        break;
      case ExperimentKind::agg_curve:
        cfg.estimators = {"baghist", "bagfp", "bagkde"};
        break;
      case ExperimentKind::bands:
        cfg.estimators = {"boot-hist", "boot-fp", "boot-kde", "kde-sm"};
        break;
      case ExperimentKind::curves:
        break;  // empty means the true pdf only
    }
  }
  for (const std::string& id : cfg.estimators) {
    switch (cfg.kind) {
      case ExperimentKind::mise:
        try {
          estimator_kind_from_name(id);
        } catch (const std::invalid_argument& e) {
          throw config_error(e.what());
        }
        break;
      case ExperimentKind::agg_curve: {
        EstimatorKind kind;
        try {
          kind = estimator_kind_from_name(id);
        } catch (const std::invalid_argument& e) {
          throw config_error(e.what());
        }
        if (!is_ensemble_kind(kind))
          throw config_error("agg-curve needs ensemble estimators, got '" + id + "'");
        break;
      }
      case ExperimentKind::bands:
        if (!band_method_from_name(id))
          throw config_error("unknown band construction '" + id + "'");
        break;
      case ExperimentKind::curves:
        if (!band_method_from_name(id)) {
          try {
            estimator_kind_from_name(id);
          } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
          }
        }
        break;
    }
  }

  if (cfg.out.empty()) cfg.out = std::string(experiment_kind_name(cfg.kind)) + ".csv";
}

}  // namespace bagdens::harness
