#include "dforall/local_opt.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace dforall {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kInitialStep = 0.05;

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

LocalOptResult NelderMead(const Objective& objective, std::span<const double> start,
                          const Box& domain, const LocalOptConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(config.time_budget));
  const std::size_t n = start.size();
  LocalOptResult result{std::vector<double>(start.begin(), start.end()),
                        std::numeric_limits<double>::infinity(), 0, false};
  if (config.max_evals <= 0) {
    result.value = std::nan("");
    return result;
  }

  auto clip = [&](std::vector<double>* x) {
    for (std::size_t i = 0; i < n; ++i) {
      (*x)[i] = std::clamp((*x)[i], domain[i].lo(), domain[i].hi());
    }
  };
  auto budget_left = [&] { return result.evals < config.max_evals && Clock::now() < deadline; };
  auto eval = [&](std::vector<double> x) -> Vertex {
    clip(&x);
    ++result.evals;
    double f = objective(x);
    if (std::isnan(f)) f = std::numeric_limits<double>::infinity();
    return {std::move(x), f};
  };

  std::vector<Vertex> simplex;
  simplex.push_back(eval(result.point));
  const double f_start = simplex.front().f;
  result.value = f_start;
  for (std::size_t i = 0; i < n && budget_left(); ++i) {
    std::vector<double> x = result.point;
    const double step = kInitialStep * domain[i].width();
    if (step == 0) continue;
    x[i] = x[i] + step <= domain[i].hi() ? x[i] + step : x[i] - step;
    simplex.push_back(eval(std::move(x)));
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  while (simplex.size() > 1 && budget_left()) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double best = simplex.front().f;
    const double worst = simplex.back().f;
    if (std::isfinite(worst) &&
        (worst - best <= config.abs_ftol || worst - best <= config.rel_ftol * std::fabs(best))) {
      break;
    }
    const std::size_t m = simplex.size() - 1;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / m;
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
      }
      return x;
    };
    const Vertex reflected = eval(along(-kReflect));
    if (reflected.f < simplex.front().f) {
      if (!budget_left()) {
        simplex.back() = reflected;
        break;
      }
      const Vertex expanded = eval(along(-kExpand));
      simplex.back() = expanded.f < reflected.f ? expanded : reflected;
      continue;
    }
    if (reflected.f < simplex[m - 1].f) {
      simplex.back() = reflected;
      continue;
    }
    if (!budget_left()) break;
    const bool outside = reflected.f < simplex.back().f;
    const Vertex contracted = eval(along(outside ? -kContract : kContract));
    if (contracted.f < std::min(reflected.f, simplex.back().f)) {
      simplex.back() = contracted;
      continue;
    }
    for (std::size_t k = 1; k < simplex.size() && budget_left(); ++k) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = simplex.front().x[i] + kShrink * (simplex[k].x[i] - simplex.front().x[i]);
      }
      simplex[k] = eval(std::move(x));
    }
  }
  const auto best = std::min_element(simplex.begin(), simplex.end(), by_value);
  if (best->f < f_start) {
    result.point = best->x;
    result.value = best->f;
    result.improved = true;
  }
  return result;
}

LocalOptResult RefineCounterexample(std::span<const double> a, std::span<const double> b,
                                    std::span<const Tape> disjuncts, const Box& y_domain,
                                    const LocalOptConfig& config) {
  std::vector<double> joint(a.size() + b.size());
  std::copy(a.begin(), a.end(), joint.begin());
  const Objective g = [&](std::span<const double> y) {
    std::copy(y.begin(), y.end(), joint.begin() + a.size());
    double worst = -std::numeric_limits<double>::infinity();
    for (const Tape& t : disjuncts) {
      const double v = t.EvaluatePoint(joint);
      if (std::isnan(v)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, v);
    }
    return worst;
  };
  return NelderMead(g, b, y_domain, config);
}

}  // namespace dforall
