#include "magpol/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "magpol/errors.hpp"

namespace magpol::quad {
namespace {

GaussRule compute_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, compute_rule(n)).first;
  return it->second;
}

namespace {

struct Panel {
  double a, b, value;
  int depth;
};

}  // namespace

AdaptiveResult adaptive(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol, int max_depth) {
  AdaptiveResult result;
  auto rule15 = [&](double lo, double hi) {
    result.evaluations += 15;
    return gauss(f, lo, hi, 15);
  };
  std::vector<Panel> stack{{a, b, rule15(a, b), 0}};
  double total_estimate = std::abs(stack.front().value);
  const double width = b - a;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double left = rule15(p.a, mid);
    const double right = rule15(mid, p.b);
    const double refined = left + right;
    const double err = std::abs(refined - p.value);
    total_estimate = std::max(total_estimate, std::abs(refined));
    const double allowed =
        std::max(abs_tol, rel_tol * total_estimate) * std::max((p.b - p.a) / width, 1e-3);
    if (err <= allowed || err <= 1e-15 * std::abs(refined)) {
      result.value += refined;
      result.error += err;
      continue;
    }
    if (p.depth >= max_depth)
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(p.a) +
                            ", " + std::to_string(p.b) + "]");
    stack.push_back({mid, p.b, right, p.depth + 1});
    stack.push_back({p.a, mid, left, p.depth + 1});
  }
  return result;
}

}  // namespace magpol::quad
