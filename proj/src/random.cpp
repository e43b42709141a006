#include "ctxembed/random.hpp"

#include <cmath>
#include <numbers>

#include "ctxembed/errors.hpp"

namespace ctxembed {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw PreconditionError("alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw PreconditionError("alias weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0) throw PreconditionError("alias weights sum to zero");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    std::size_t s = small.back();
    small.pop_back();
    std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  // Leftovers here are rounding residue; they are certain draws.
  for (std::size_t i : small) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
}

double AliasTable::probability(std::size_t i) const {
  const double n = static_cast<double>(prob_.size());
  double p = prob_[i];
  for (std::size_t j = 0; j < prob_.size(); ++j) {
    if (alias_[j] == i && j != i) p += 1.0 - prob_[j];
  }
  return p / n;
}

}  // namespace ctxembed
