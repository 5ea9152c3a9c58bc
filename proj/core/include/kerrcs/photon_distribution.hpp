#pragma once

#include <string>
#include <vector>

namespace kerrcs {

enum class Mode { A, B };

/// Probability table p(n_a, n_b) on the truncation 0..max_na x 0..max_nb.
class JointPhotonDistribution {
 public:
  /// `table[n_a][n_b]`; rows must share one length. Throws IntegrityError if
  /// any entry is negative or the total differs from 1 by more than 1e-10.
  JointPhotonDistribution(std::vector<std::vector<double>> table, std::string label);

  int max_na() const noexcept { return static_cast<int>(table_.size()) - 1; }
  int max_nb() const noexcept { return static_cast<int>(table_.front().size()) - 1; }

  double operator()(int n_a, int n_b) const;

  const std::string& label() const noexcept { return label_; }

  /// Sums out the other mode.
  std::vector<double> marginal(Mode mode) const;

  double total() const;

 private:
  std::vector<std::vector<double>> table_;
  std::string label_;
};

}  // namespace kerrcs
