#include "quadrature_internal.hpp"

#include <exception>

namespace rzeta::quad {

namespace {

void check_finite(const BigReal& v, const Abscissa& node) {
  if (!v.is_finite())
    throw EvaluationError("integrand returned " + v.to_string(6) + " at x = " + node.x.to_string(30) +
                          " (distance to endpoints " + node.from_a.to_string(6) + ", " +
                          node.to_b.to_string(6) + ")");
}

}  // namespace

namespace detail {

std::vector<NodeValue> evaluate_serial(const NodeFunction& f, std::span<const Abscissa> nodes) {
  std::vector<NodeValue> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) {
    out.push_back(f(node));
    check_finite(out.back().value, node);
  }
  return out;
}

std::vector<NodeValue> evaluate_omp(const NodeFunction& f, std::span<const Abscissa> nodes) {
  std::vector<std::optional<NodeValue>> slots(nodes.size());
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const auto& node = nodes[static_cast<std::size_t>(i)];
      NodeValue v = f(node);
      check_finite(v.value, node);
      slots[static_cast<std::size_t>(i)].emplace(std::move(v));
    } catch (...) {
#pragma omp critical(rzeta_quad_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<NodeValue> out;
  out.reserve(nodes.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace detail

namespace kernels {

namespace {
detail::NodeFunction lift(const Integrand& f) {
  return [&f](const Abscissa& a) { return detail::NodeValue{f(a), std::nullopt, 1, {}}; };
}
std::vector<BigReal> values(std::vector<detail::NodeValue>&& v) {
  std::vector<BigReal> out;
  out.reserve(v.size());
  for (auto& x : v) out.push_back(std::move(x.value));
  return out;
}
}  // namespace

std::vector<BigReal> evaluate_serial(const Integrand& f, std::span<const Abscissa> nodes) {
  return values(detail::evaluate_serial(lift(f), nodes));
}

std::vector<BigReal> evaluate_omp(const Integrand& f, std::span<const Abscissa> nodes) {
  return values(detail::evaluate_omp(lift(f), nodes));
}

}  // namespace kernels

}  // namespace rzeta::quad
