#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pcaerg {

/// Welford running mean and variance.
class RunningStat {
 public:
  void push(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return n_; }
  double mean() const { return n_ > 0 ? mean_ : 0.0; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Batch-means estimator for a correlated series of known length.
///
/// The series is cut into `batches` consecutive blocks (the last one takes the
/// remainder); the standard error is the spread of block means over sqrt(#blocks).
class BatchMeans {
 public:
  BatchMeans(std::size_t total, std::size_t batches = 100)
      : batch_size_(total >= batches ? total / batches : 1),
        sums_(total >= batches ? batches : (total > 0 ? total : 1), 0.0),
        counts_(sums_.size(), 0) {}

  void push(double x) {
    std::size_t b = n_ / batch_size_;
    if (b >= sums_.size()) b = sums_.size() - 1;
    sums_[b] += x;
    ++counts_[b];
    total_ += x;
    ++n_;
  }

  std::size_t count() const { return n_; }
  double mean() const { return n_ > 0 ? total_ / static_cast<double>(n_) : 0.0; }

  double std_error() const {
    RunningStat block;
    for (std::size_t b = 0; b < sums_.size(); ++b) {
      if (counts_[b] > 0) block.push(sums_[b] / static_cast<double>(counts_[b]));
    }
    if (block.count() < 2) return 0.0;
    return block.stddev() / std::sqrt(static_cast<double>(block.count()));
  }

 private:
  std::size_t batch_size_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  double total_ = 0.0;
  std::size_t n_ = 0;
};

/// Mean and batch-means standard error of a simulated increment series.
struct DriftEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
};

}  // namespace pcaerg
