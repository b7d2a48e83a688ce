#include <algorithm>
#include <cmath>
#include <limits>

#include "sgrass/error.hpp"
#include "sgrass/forge.hpp"

namespace sgrass {

SurrogateEval smooth_mcd_surrogate(const std::vector<CMatrix>& points, double epsilon,
                                   std::vector<CMatrix>* gradient) {
  const std::size_t n = points.size();
  if (n < 2) fail(ErrorCode::TooFewCodewords, "surrogate needs at least two codewords");
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidConfig, "epsilon must be positive");
  const double m = static_cast<double>(points.front().cols());

  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> delta(pairs);
  std::vector<CMatrix> overlap;
  if (gradient != nullptr) overlap.resize(pairs);

  SurrogateEval out;
  double max_exponent = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  CMatrix c;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      c.noalias() = points[i].adjoint() * points[j];
      const double g = c.squaredNorm();
      out.max_overlap = std::max(out.max_overlap, g);
      delta[k] = std::sqrt(std::max(0.0, 2.0 * m - 2.0 * g));
      max_exponent = std::max(max_exponent, -delta[k] / epsilon);
      if (gradient != nullptr) overlap[k] = c;
    }
  }
  double sum = 0.0;
  for (double d : delta) sum += std::exp(-d / epsilon - max_exponent);
  out.value = max_exponent + std::log(sum);

  if (gradient != nullptr) {
    gradient->assign(n, CMatrix());
    for (std::size_t i = 0; i < n; ++i) {
      (*gradient)[i] = CMatrix::Zero(points[i].rows(), points[i].cols());
    }
    k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        const double weight = std::exp(-delta[k] / epsilon - max_exponent) / sum;
        // dF/dg with g = ||Wi^H Wj||^2, and dg/dWi* = Wj C^H, dg/dWj* = Wi C.
        const double dfdg = weight / (epsilon * std::max(delta[k], 1e-9));
        (*gradient)[i].noalias() += (2.0 * dfdg) * (points[j] * overlap[k].adjoint());
        (*gradient)[j].noalias() += (2.0 * dfdg) * (points[i] * overlap[k]);
      }
    }
  }
  return out;
}

double smooth_mcd_objective(const Codebook& book, double epsilon) {
  if (book.size() < 2) fail(ErrorCode::TooFewCodewords, "need at least two codewords");
  std::vector<CMatrix> points;
  points.reserve(book.size());
  for (const auto& w : book.codewords) points.push_back(w.matrix());
  return smooth_mcd_surrogate(points, epsilon).value;
}

}  // namespace sgrass
