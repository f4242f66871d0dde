#pragma once

#include "rzeta/quadrature.hpp"

#include <optional>

namespace rzeta::quad::detail {

// One integrand evaluation. Nested rules report the inner error estimate and
// the number of inner evaluations here.
struct NodeValue {
  BigReal value;
  std::optional<BigReal> err;
  long nodes = 1;
  std::string warning;
};

using NodeFunction = std::function<NodeValue(const Abscissa&)>;

std::vector<NodeValue> evaluate_serial(const NodeFunction& f, std::span<const Abscissa> nodes);
std::vector<NodeValue> evaluate_omp(const NodeFunction& f, std::span<const Abscissa> nodes);

QuadResult tanh_sinh_core(const NodeFunction& f, const BigReal& a, const BigReal& b, const PrecCtx& ctx,
                          const QuadOptions& opts);

}  // namespace rzeta::quad::detail
