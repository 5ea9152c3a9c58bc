#include "kerrcs/photon_distribution.hpp"

#include "kerrcs/errors.hpp"

#include <cmath>

namespace kerrcs {

JointPhotonDistribution::JointPhotonDistribution(std::vector<std::vector<double>> table,
                                                 std::string label)
    : table_(std::move(table)), label_(std::move(label)) {
  if (table_.empty() || table_.front().empty())
    throw IntegrityError("photon distribution table is empty");
  const auto cols = table_.front().size();
  for (const auto& row : table_) {
    if (row.size() != cols) throw IntegrityError("photon distribution table is ragged");
    for (double p : row) {
      if (!(p >= 0.0)) throw IntegrityError("negative or NaN probability in " + label_);
    }
  }
  if (std::abs(total() - 1.0) > 1e-10)
    throw IntegrityError("photon distribution '" + label_ + "' is not normalized");
}

double JointPhotonDistribution::operator()(int n_a, int n_b) const {
  if (n_a < 0 || n_b < 0 || n_a > max_na() || n_b > max_nb()) return 0.0;
  return table_[static_cast<std::size_t>(n_a)][static_cast<std::size_t>(n_b)];
}

std::vector<double> JointPhotonDistribution::marginal(Mode mode) const {
  const int size = (mode == Mode::A ? max_na() : max_nb()) + 1;
  std::vector<double> out(static_cast<std::size_t>(size), 0.0);
  for (int i = 0; i <= max_na(); ++i) {
    for (int j = 0; j <= max_nb(); ++j) {
      out[static_cast<std::size_t>(mode == Mode::A ? i : j)] += (*this)(i, j);
    }
  }
  return out;
}

double JointPhotonDistribution::total() const {
  double sum = 0.0;
  for (const auto& row : table_)
    for (double p : row) sum += p;
  return sum;
}

}  // namespace kerrcs
