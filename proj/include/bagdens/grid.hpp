#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bagdens {

//! Uniformly spaced evaluation abscissae t_0 < t_1 < ... < t_{N-1}.
class EvalGrid {
 public:
  EvalGrid(double lo, double hi, std::size_t count) : lo_(lo), count_(count) {
    if (count < 2) throw std::invalid_argument("evaluation grid needs at least 2 points");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw std::invalid_argument("evaluation grid needs finite bounds with lo < hi");
    step_ = (hi - lo) / static_cast<double>(count - 1);
  }

  std::size_t size() const { return count_; }
  double point(std::size_t i) const { return lo_ + step_ * static_cast<double>(i); }
  double spacing() const { return step_; }
  double front() const { return point(0); }
  double back() const { return point(count_ - 1); }

  std::vector<double> points() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = point(i);
    return out;
  }

 private:
  double lo_;
  double step_;
  std::size_t count_;
};

}  // namespace bagdens
