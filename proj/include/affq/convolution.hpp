#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "affq/affine.hpp"
#include "affq/measure.hpp"

namespace affq {

inline constexpr std::size_t kDefaultCellBudget = 10'000'000;

/// Exact law of x_n = g_1⋯g_n, keyed by the canonical "a;b" string.
class ConvolutionTable {
 public:
  struct Cell {
    AffineMap element;
    Rational probability;
  };

  /// Point mass at the identity, generation 0.
  ConvolutionTable();
  explicit ConvolutionTable(const StepDistribution& mu);

  std::size_t generation() const { return generation_; }
  std::size_t support_size() const { return cells_.size(); }
  const std::map<std::string, Cell>& cells() const { return cells_; }
  /// Probability of g, 0 if absent.
  Rational probability(const AffineMap& g) const;

  friend ConvolutionTable convolve(const ConvolutionTable& t1, const ConvolutionTable& t2, std::size_t budget);
  friend ConvolutionTable reflect(const ConvolutionTable& t);

 private:
  std::map<std::string, Cell> cells_;
  std::size_t generation_ = 0;
};

/// Law of g·h for independent g ~ t1 and h ~ t2. Throws BudgetExceeded when
/// the product support would exceed the budget.
ConvolutionTable convolve(const ConvolutionTable& t1, const ConvolutionTable& t2,
                          std::size_t budget = kDefaultCellBudget);

/// μ*ⁿ.
ConvolutionTable power(const StepDistribution& mu, std::size_t n, std::size_t budget = kDefaultCellBudget);

/// Image of the table under inversion.
ConvolutionTable reflect(const ConvolutionTable& t);

/// Shannon entropy -Σ p ln p.
double entropy(const ConvolutionTable& t);

}  // namespace affq
