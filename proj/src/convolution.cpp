#include "affq/convolution.hpp"

#include <cmath>

#include "affq/error.hpp"

namespace affq {

ConvolutionTable::ConvolutionTable() {
  const AffineMap id = AffineMap::identity();
  cells_.emplace(id.key(), Cell{id, Rational(1)});
}

ConvolutionTable::ConvolutionTable(const StepDistribution& mu) : generation_(1) {
  for (const auto& atom : mu.atoms()) cells_.emplace(atom.map.key(), Cell{atom.map, atom.weight});
}

Rational ConvolutionTable::probability(const AffineMap& g) const {
  const auto it = cells_.find(g.key());
  return it == cells_.end() ? Rational(0) : it->second.probability;
}

ConvolutionTable convolve(const ConvolutionTable& t1, const ConvolutionTable& t2, std::size_t budget) {
  const std::size_t pairs = t1.cells_.size() * t2.cells_.size();
  if (pairs > budget) throw BudgetExceeded("convolution support budget exceeded", pairs);
  ConvolutionTable out;
  out.cells_.clear();
  out.generation_ = t1.generation_ + t2.generation_;
  for (const auto& [k1, c1] : t1.cells_) {
    for (const auto& [k2, c2] : t2.cells_) {
      AffineMap g = compose(c1.element, c2.element);
      const Rational pr = c1.probability * c2.probability;
      auto key = g.key();
      auto it = out.cells_.find(key);
      if (it == out.cells_.end()) {
        out.cells_.emplace(std::move(key), ConvolutionTable::Cell{std::move(g), pr});
      } else {
        it->second.probability += pr;
      }
    }
  }
  return out;
}

ConvolutionTable power(const StepDistribution& mu, std::size_t n, std::size_t budget) {
  ConvolutionTable acc;
  const ConvolutionTable step(mu);
  for (std::size_t i = 0; i < n; ++i) acc = convolve(acc, step, budget);
  return acc;
}

ConvolutionTable reflect(const ConvolutionTable& t) {
  ConvolutionTable out;
  out.cells_.clear();
  out.generation_ = t.generation_;
  for (const auto& [key, cell] : t.cells_) {
    AffineMap g = inverse(cell.element);
    out.cells_.emplace(g.key(), ConvolutionTable::Cell{g, cell.probability});
  }
  return out;
}

double entropy(const ConvolutionTable& t) {
  double h = 0.0;
  for (const auto& [key, cell] : t.cells()) {
    const auto& pr = cell.probability;
    if (pr.sign() > 0) h -= pr.to_double() * (log_abs(pr.numerator()) - log_abs(pr.denominator()));
  }
  return h;
}

}  // namespace affq
