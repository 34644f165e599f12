#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bagdens::harness {

//! Serializes a double with 10 significant digits and a '.' separator,
//! independent of any global locale.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

//! One statistic of one experiment cell.
struct ResultRow {
  std::string experiment;
  std::string model;
  std::string estimator;
  std::size_t n = 0;
  std::size_t ensemble = 0;
  std::string statistic;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

//! Collects result rows and writes them as CSV with a fixed header and
//! deterministic (model, estimator, n, B, statistic) ordering.
class ResultTable {
 public:
  static constexpr const char* header = "experiment,model,estimator,n,B,statistic,value,stderr,seed";

  void add(ResultRow row) {
    if (!std::isfinite(row.value) || !std::isfinite(row.std_error))
      throw std::runtime_error("non-finite statistic for " + row.model + "/" + row.estimator +
                               "/" + row.statistic);
    rows_.push_back(std::move(row));
  }

  //! Sorts into the deterministic output order and rejects duplicate cells.
  void sort_rows() {
    auto key = [](const ResultRow& r) {
      return std::tie(r.model, r.estimator, r.n, r.ensemble, r.statistic);
    };
    std::sort(rows_.begin(), rows_.end(),
              [&key](const ResultRow& a, const ResultRow& b) { return key(a) < key(b); });
    for (std::size_t i = 1; i < rows_.size(); ++i) {
      if (key(rows_[i - 1]) == key(rows_[i]))
        throw std::logic_error("duplicate result row for " + rows_[i].model + "/" +
                               rows_[i].estimator + "/" + rows_[i].statistic);
    }
  }

  const std::vector<ResultRow>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const {
    os << header << '\n';
    for (const ResultRow& r : rows_) {
      os << r.experiment << ',' << r.model << ',' << r.estimator << ',' << r.n << ','
         << r.ensemble << ',' << r.statistic << ',' << format_double(r.value) << ','
         << format_double(r.std_error) << ',' << r.seed << '\n';
    }
  }

  void write_csv_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    write_csv(os);
    os.flush();
    if (!os) throw std::runtime_error("failed writing output file '" + path + "'");
  }

 private:
  std::vector<ResultRow> rows_;
};

}  // namespace bagdens::harness
