#include "lastsuccess/statistics.hpp"

#include <stdexcept>

namespace lastsuccess {

QHatStatistics::QHatStatistics(std::size_t m, std::vector<std::uint64_t> counts)
    : m_(m), counts_(std::move(counts)) {
  if (m_ == 0) throw std::invalid_argument("QHatStatistics: m must be positive");
  if (counts_.size() < 2) throw std::invalid_argument("QHatStatistics: need n >= 1");
  if (counts_.back() != m_) throw std::invalid_argument("QHatStatistics: T_{n+1} must equal m");
  for (std::size_t i = 1; i < counts_.size(); ++i) {
    if (counts_[i - 1] > counts_[i]) {
      throw std::invalid_argument("QHatStatistics: counts must be non-decreasing");
    }
  }
  qhat_.resize(counts_.size());
  const double md = static_cast<double>(m_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    qhat_[i] = static_cast<double>(counts_[i]) / md;
  }
}

QHatStatistics qhat_from_last_indices(std::span<const std::size_t> last_indices,
                                      std::size_t n) {
  // histogram of L, then T_i = #{L <= i-1} as a running sum
  std::vector<std::uint64_t> hist(n + 1, 0);
  for (auto l : last_indices) {
    if (l > n) throw std::invalid_argument("last-success index exceeds n");
    ++hist[l];
  }
  std::vector<std::uint64_t> counts(n + 1);
  std::uint64_t running = 0;
  for (std::size_t i = 1; i <= n + 1; ++i) {
    running += hist[i - 1];
    counts[i - 1] = running;
  }
  return QHatStatistics(last_indices.size(), std::move(counts));
}

QHatStatistics qhat_statistics(const SampleMatrix& samples) {
  std::vector<std::size_t> last(samples.rows());
  for (std::size_t j = 0; j < samples.rows(); ++j) last[j] = last_success_index(samples.row(j));
  return qhat_from_last_indices(last, samples.cols());
}

}  // namespace lastsuccess
