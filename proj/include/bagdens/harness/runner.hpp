#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "../bagging.hpp"
#include "../bands.hpp"
#include "../bandwidth.hpp"
#include "../estimator_spec.hpp"
#include "../grid.hpp"
#include "../metrics.hpp"
#include "../models.hpp"
#include "../parallel.hpp"
#include "../rng.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace bagdens::harness {

//! Key for the per-cell RNG stream. Deliberately excludes the experiment
//! kind and the ensemble size, so for instance the aggregation curve at
//! B = 1 reuses exactly the replicate streams of the error experiment.
inline std::uint64_t cell_key(std::string_view model, std::string_view estimator,
                              std::size_t n) {
  std::string label;
  label.reserve(model.size() + estimator.size() + 24);
  label.append(model);
  label.push_back('|');
  label.append(estimator);
  label.push_back('|');
  label.append(std::to_string(n));
  return hash_label(label);
}

inline BandwidthChoice bandwidth_choice_from_rule(const std::string& rule) {
  if (rule == "reference") return BandwidthChoice::reference();
  if (rule == "lscv") return BandwidthChoice::lscv();
  throw config_error("bandwidth rule must be 'lscv' or 'reference'");
}

inline EstimatorSpec make_estimator_spec(const ExperimentConfig& cfg, EstimatorKind kind,
                                         std::size_t ensemble) {
  EstimatorSpec spec;
  spec.kind = kind;
  spec.bandwidth = bandwidth_choice_from_rule(cfg.bandwidth_rule);
  spec.kernel = Kernel::from_name(cfg.kernel);
  spec.ensemble_size = ensemble;
  return spec;
}

//! Builds one band of the requested construction on the given sample.
inline Band fit_band(BandMethod method, std::span<const double> sample,
                     const RngStream& fit_stream, const BandwidthChoice& choice,
                     const Kernel& kernel, std::size_t ensemble, double alpha,
                     const EvalGrid& grid) {
  switch (method) {
    case BandMethod::boot_hist:
      return bootstrap_band(bag_histogram(sample, ensemble, fit_stream, BagOptions{choice, {}}),
                            alpha, grid);
    case BandMethod::boot_fp:
      return bootstrap_band(
          bag_frequency_polygon(sample, ensemble, fit_stream, BagOptions{choice, {}}), alpha,
          grid);
    case BandMethod::boot_kde:
      return bootstrap_band(
          bag_kde(sample, ensemble, fit_stream, BagOptions{choice, {}}, kernel), alpha, grid);
    case BandMethod::kde_sm: {
      const double h = bagdens::detail::resolve_bandwidth(sample, choice, CurveFamily::kde,
                                                          kernel, std::nullopt);
      return kde_band(KdeEstimator(sample, h, kernel), normal_upper_quantile(alpha / 2.0), grid);
    }
  }
  throw std::logic_error("unreachable band method");
}

namespace detail {

//! Integrated squared errors of the running ensemble average after 1..B
//! members, reported at the requested (ascending) ensemble sizes. Averaging
//! members in index order makes the B = 1 value bit-identical to evaluating
//! a one-member ensemble.
template <class Estimator>
std::vector<double> prefix_ises(const BaggedEnsemble<Estimator>& ens, const DensityModel& model,
                                const EvalGrid& grid, const std::vector<std::size_t>& sizes) {
  std::vector<double> sums(grid.size(), 0.0);
  std::vector<double> values(grid.size());
  std::vector<double> out;
  out.reserve(sizes.size());
  std::size_t next = 0;
  for (std::size_t b = 1; b <= ens.size() && next < sizes.size(); ++b) {
    const Estimator& member = ens.member(b - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) sums[i] += member(grid.point(i));
    if (b == sizes[next]) {
      for (std::size_t i = 0; i < grid.size(); ++i) values[i] = sums[i] / static_cast<double>(b);
      out.push_back(ise_values_checked(values, model, grid).value);
      ++next;
    }
  }
  if (out.size() != sizes.size())
    throw std::logic_error("ensemble smaller than the largest requested size");
  return out;
}

}  // namespace detail

//! Monte Carlo MISE table over models x estimators x sample sizes.
inline ResultTable run_mise(const ExperimentConfig& cfg) {
  const RngStream master(*cfg.seed);
  const unsigned threads = resolve_threads(cfg);
  const std::size_t ensemble = cfg.ensemble_sizes.at(0);
  ResultTable table;
  for (const std::string& model_name : cfg.models) {
    const DensityModel model = DensityModel::from_name(model_name);
    const EvalGrid grid = default_grid(model);
    for (const std::string& est_name : cfg.estimators) {
      const EstimatorKind kind = estimator_kind_from_name(est_name);
      const EstimatorSpec spec = make_estimator_spec(cfg, kind, ensemble);
      for (std::size_t n : cfg.sample_sizes) {
        const RngStream cell = master.derive(cell_key(model_name, est_name, n));
        const MiseResult r = mise(
            model, n, cfg.replicates, cell, grid,
            [&spec](std::span<const double> sample, const RngStream& fit_stream) {
              return fit_estimator(spec, sample, fit_stream);
            },
            threads);
        ResultRow row;
        row.experiment = "mise";
        row.model = model_name;
        row.estimator = est_name;
        row.n = n;
        row.ensemble = is_ensemble_kind(kind) ? ensemble : 1;
        row.statistic = "mise_x100";
        row.value = 100.0 * r.mean;
        row.std_error = 100.0 * r.std_error;
        row.seed = *cfg.seed;
        table.add(std::move(row));
      }
    }
  }
  table.sort_rows();
  return table;
}

//! MISE of the bagged estimators as a function of the ensemble size. Each
//! replicate fits the largest requested ensemble once and evaluates nested
//! prefixes of it.
inline ResultTable run_agg_curve(const ExperimentConfig& cfg) {
  const RngStream master(*cfg.seed);
  const unsigned threads = resolve_threads(cfg);
  const std::vector<std::size_t>& sizes = cfg.ensemble_sizes;
  const std::size_t b_max = sizes.back();
  const BandwidthChoice choice = bandwidth_choice_from_rule(cfg.bandwidth_rule);
  const Kernel kernel = Kernel::from_name(cfg.kernel);
  ResultTable table;
  for (const std::string& model_name : cfg.models) {
    const DensityModel model = DensityModel::from_name(model_name);
    const EvalGrid grid = default_grid(model);
    for (const std::string& est_name : cfg.estimators) {
      const EstimatorKind kind = estimator_kind_from_name(est_name);
      for (std::size_t n : cfg.sample_sizes) {
        const RngStream cell = master.derive(cell_key(model_name, est_name, n));
        std::vector<std::vector<double>> errors(cfg.replicates);
        parallel_for(cfg.replicates, threads, [&](std::size_t idx) {
          const RngStream rep = cell.derive(idx + 1);
          RngStream sample_stream = rep.derive(0);
          const std::vector<double> sample = model.sample(n, sample_stream);
          const RngStream fit_stream = rep.derive(1);
          switch (kind) {
            case EstimatorKind::baghist:
              errors[idx] = detail::prefix_ises(
                  bag_histogram(sample, b_max, fit_stream, BagOptions{choice, {}}), model, grid,
                  sizes);
              break;
            case EstimatorKind::bagfp:
              errors[idx] = detail::prefix_ises(
                  bag_frequency_polygon(sample, b_max, fit_stream, BagOptions{choice, {}}),
                  model, grid, sizes);
              break;
            case EstimatorKind::bagkde:
              errors[idx] = detail::prefix_ises(
                  bag_kde(sample, b_max, fit_stream, BagOptions{choice, {}}, kernel), model,
                  grid, sizes);
              break;
            case EstimatorKind::rash: {
              const double h = bagdens::detail::resolve_bandwidth(
                  sample, choice, CurveFamily::histogram, kernel, std::nullopt);
              errors[idx] =
                  detail::prefix_ises(rash(sample, h, b_max, fit_stream), model, grid, sizes);
              break;
            }
            default:
              throw std::logic_error("agg-curve reached a non-ensemble estimator");
          }
        });
        for (std::size_t j = 0; j < sizes.size(); ++j) {
          RunningStat stat;
          for (const std::vector<double>& per_replicate : errors) stat.add(per_replicate[j]);
          ResultRow row;
          row.experiment = "agg-curve";
          row.model = model_name;
          row.estimator = est_name;
          row.n = n;
          row.ensemble = sizes[j];
          row.statistic = "mise_x100";
          row.value = 100.0 * stat.mean();
          row.std_error = 100.0 * stat.std_error();
          row.seed = *cfg.seed;
          table.add(std::move(row));
        }
      }
    }
  }
  table.sort_rows();
  return table;
}

//! Mean empirical coverage and mean width of the four band constructions.
inline ResultTable run_bands(const ExperimentConfig& cfg) {
  const RngStream master(*cfg.seed);
  const unsigned threads = resolve_threads(cfg);
  const std::size_t ensemble = cfg.ensemble_sizes.at(0);
  const BandwidthChoice choice = bandwidth_choice_from_rule(cfg.bandwidth_rule);
  const Kernel kernel = Kernel::from_name(cfg.kernel);
  ResultTable table;
  for (const std::string& model_name : cfg.models) {
    const DensityModel model = DensityModel::from_name(model_name);
    const EvalGrid grid = default_grid(model);
    for (const std::string& method_name : cfg.estimators) {
      const BandMethod method = *band_method_from_name(method_name);
      for (std::size_t n : cfg.sample_sizes) {
        const RngStream cell = master.derive(cell_key(model_name, method_name, n));
        std::vector<double> coverages(cfg.replicates);
        std::vector<double> widths(cfg.replicates);
        parallel_for(cfg.replicates, threads, [&](std::size_t idx) {
          const RngStream rep = cell.derive(idx + 1);
          RngStream sample_stream = rep.derive(0);
          const std::vector<double> sample = model.sample(n, sample_stream);
          const Band band = fit_band(method, sample, rep.derive(1), choice, kernel, ensemble,
                                     cfg.alpha, grid);
          coverages[idx] = 100.0 * coverage(band, model);
          widths[idx] = mean_width(band);
        });
        RunningStat cov_stat;
        RunningStat width_stat;
        for (std::size_t m = 0; m < cfg.replicates; ++m) {
          cov_stat.add(coverages[m]);
          width_stat.add(widths[m]);
        }
        const std::size_t reported_b = method == BandMethod::kde_sm ? 1 : ensemble;
        ResultRow cov_row;
        cov_row.experiment = "bands";
        cov_row.model = model_name;
        cov_row.estimator = method_name;
        cov_row.n = n;
        cov_row.ensemble = reported_b;
        cov_row.statistic = "coverage_x100";
        cov_row.value = cov_stat.mean();
        cov_row.std_error = cov_stat.std_error();
        cov_row.seed = *cfg.seed;
        table.add(std::move(cov_row));
        ResultRow width_row;
        width_row.experiment = "bands";
        width_row.model = model_name;
        width_row.estimator = method_name;
        width_row.n = n;
        width_row.ensemble = reported_b;
        width_row.statistic = "mean_width";
        width_row.value = width_stat.mean();
        width_row.std_error = width_stat.std_error();
        width_row.seed = *cfg.seed;
        table.add(std::move(width_row));
      }
    }
  }
  table.sort_rows();
  return table;
}

//! Plot-ready columns over the evaluation grid: the true pdf plus any
//! requested point estimates and band envelopes, all from one shared sample.
struct CurveTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // one vector per column
};

inline CurveTable run_curves(const ExperimentConfig& cfg) {
  const std::string& model_name = cfg.models.at(0);
  const DensityModel model = DensityModel::from_name(model_name);
  const std::size_t n = cfg.sample_sizes.at(0);
  const EvalGrid grid = default_grid(model);
  const std::size_t ensemble = cfg.ensemble_sizes.at(0);
  const BandwidthChoice choice = bandwidth_choice_from_rule(cfg.bandwidth_rule);
  const Kernel kernel = Kernel::from_name(cfg.kernel);

  const RngStream master(*cfg.seed);
  const RngStream cell = master.derive(cell_key(model_name, "curves", n));
  const RngStream rep = cell.derive(1);
  RngStream sample_stream = rep.derive(0);
  const std::vector<double> sample = model.sample(n, sample_stream);

  CurveTable out;
  out.columns = {"t", "f_true"};
  out.data.push_back(grid.points());
  std::vector<double> truth(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) truth[i] = model.pdf(grid.point(i));
  out.data.push_back(std::move(truth));

  std::size_t position = 0;
  for (const std::string& id : cfg.estimators) {
    ++position;
    const RngStream fit_stream = rep.derive(position);
    if (const std::optional<BandMethod> method = band_method_from_name(id)) {
      const Band band =
          fit_band(*method, sample, fit_stream, choice, kernel, ensemble, cfg.alpha, grid);
      std::vector<double> lower(grid.size());
      std::vector<double> upper(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        lower[i] = band.lower(i);
        upper[i] = band.upper(i);
      }
      out.columns.push_back(id + "_lower");
      out.data.push_back(std::move(lower));
      out.columns.push_back(id + "_upper");
      out.data.push_back(std::move(upper));
    } else {
      const EstimatorSpec spec = make_estimator_spec(cfg, estimator_kind_from_name(id), ensemble);
      const FittedDensity density = fit_estimator(spec, sample, fit_stream);
      std::vector<double> values(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) values[i] = density(grid.point(i));
      out.columns.push_back(id);
      out.data.push_back(std::move(values));
    }
  }
  return out;
}

inline void write_curves_csv(const CurveTable& curves, std::ostream& os) {
  for (std::size_t c = 0; c < curves.columns.size(); ++c) {
    if (c > 0) os << ',';
    os << curves.columns[c];
  }
  os << '\n';
  const std::size_t rows = curves.data.empty() ? 0 : curves.data.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < curves.data.size(); ++c) {
      if (c > 0) os << ',';
      os << format_double(curves.data[c][r]);
    }
    os << '\n';
  }
}

inline void write_curves_csv_file(const CurveTable& curves, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  write_curves_csv(curves, os);
  os.flush();
  if (!os) throw std::runtime_error("failed writing output file '" + path + "'");
}

//! Runs the configured (already finalized) experiment and writes its output
//! file.
inline void run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::mise:
      run_mise(cfg).write_csv_file(cfg.out);
      return;
    case ExperimentKind::agg_curve:
      run_agg_curve(cfg).write_csv_file(cfg.out);
      return;
    case ExperimentKind::bands:
      run_bands(cfg).write_csv_file(cfg.out);
      return;
    case ExperimentKind::curves:
      write_curves_csv_file(run_curves(cfg), cfg.out);
      return;
  }
  throw std::logic_error("unreachable experiment kind");
}

}  // namespace bagdens::harness
