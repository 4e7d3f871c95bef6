// Empirical no-success statistics from m sample sequences.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lastsuccess/core.hpp"

namespace lastsuccess {

/// T_i = number of sample sequences with no success in trials i..n, and the
/// estimate Qhat_i = T_i / m. Both vectors have n+1 entries; element i-1
/// holds index i and the last element is the convention T_{n+1} = m.
class QHatStatistics {
 public:
  /// Validates 0 <= T_1 <= ... <= T_{n+1} = m.
  QHatStatistics(std::size_t m, std::vector<std::uint64_t> counts);

  std::size_t m() const { return m_; }
  std::size_t n() const { return counts_.size() - 1; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::span<const double> qhat() const { return qhat_; }

  std::uint64_t t(std::size_t i) const { return counts_[i - 1]; }
  double q(std::size_t i) const { return qhat_[i - 1]; }

 private:
  std::size_t m_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> qhat_;
};

QHatStatistics qhat_statistics(const SampleMatrix& samples);

/// Same statistics from per-row last-success indices (0 = no success).
/// T_i = #{j : L_j <= i-1}.
QHatStatistics qhat_from_last_indices(std::span<const std::size_t> last_indices,
                                      std::size_t n);

}  // namespace lastsuccess
