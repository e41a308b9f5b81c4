#include <algorithm>
#include <cmath>
#include <numeric>

#include "search.hpp"
#include "stlf/optim/algorithms.hpp"
#include "stlf/rng.hpp"

namespace stlf::optim {

namespace detail {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kDiameterTol = 1e-8;
constexpr double kInitialEdge = 0.05;

using Point = std::vector<double>;

Point affine(const Point& c, const Point& x, double coef) {
  // c + coef * (c - x)
  Point out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] + coef * (c[i] - x[i]);
  return out;
}

Point clip(Point x, const Box& box) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
  return x;
}

double diameter(const std::vector<Point>& s) {
  double d = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < s[a].size(); ++i) acc += (s[a][i] - s[b][i]) * (s[a][i] - s[b][i]);
      d = std::max(d, std::sqrt(acc));
    }
  }
  return d;
}

}  // namespace

LocalResult simplex_descent(Search& search, const Box& box, Point x0, double f0, std::size_t max_evals) {
  const std::size_t n = box.dim();
  const std::size_t start = search.used();
  auto budget_left = [&] { return search.used() - start < max_evals; };

  std::vector<Point> simplex{x0};
  std::vector<double> f{f0};
  for (std::size_t i = 0; i < n; ++i) {
    Point v = x0;
    const double step = kInitialEdge * box[i].width();
    v[i] = v[i] + step <= box[i].hi ? v[i] + step : v[i] - step;
    v = clip(std::move(v), box);
    if (!budget_left()) return {simplex[0], f[0], false};
    f.push_back(search.eval(v));
    simplex.push_back(std::move(v));
  }

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<Point> s2;
    std::vector<double> f2;
    for (std::size_t k : order) {
      s2.push_back(std::move(simplex[k]));
      f2.push_back(f[k]);
    }
    simplex = std::move(s2);
    f = std::move(f2);
  };

  while (true) {
    sort_simplex();
    if (diameter(simplex) < kDiameterTol) return {simplex[0], f[0], true};
    if (!budget_left()) return {simplex[0], f[0], false};

    Point centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);
    const Point& worst = simplex[n];

    Point xr = clip(affine(centroid, worst, kReflect), box);
    const double fr = search.eval(xr);

    if (fr < f[0]) {
      if (!budget_left()) {
        simplex[n] = std::move(xr);
        f[n] = fr;
        continue;
      }
      Point xe = clip(affine(centroid, worst, kExpand), box);
      const double fe = search.eval(xe);
      if (fe < fr) {
        simplex[n] = std::move(xe);
        f[n] = fe;
      } else {
        simplex[n] = std::move(xr);
        f[n] = fr;
      }
      continue;
    }
    if (fr < f[n - 1]) {
      simplex[n] = std::move(xr);
      f[n] = fr;
      continue;
    }
    if (!budget_left()) continue;

    bool shrink = false;
    if (fr < f[n]) {
      Point xc = clip(affine(centroid, worst, kContract * kReflect), box);
      const double fc = search.eval(xc);
      if (fc <= fr) {
        simplex[n] = std::move(xc);
        f[n] = fc;
      } else {
        shrink = true;
      }
    } else {
      Point xcc = clip(affine(centroid, worst, -kContract), box);
      const double fcc = search.eval(xcc);
      if (fcc < f[n]) {
        simplex[n] = std::move(xcc);
        f[n] = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t k = 1; k <= n; ++k) {
        if (!budget_left()) break;
        for (std::size_t i = 0; i < n; ++i) simplex[k][i] = simplex[0][i] + kShrink * (simplex[k][i] - simplex[0][i]);
        f[k] = search.eval(simplex[k]);
      }
    }
  }
}

}  // namespace detail

OptResult nelder_mead(Objective& obj, const Box& box, std::size_t budget, double target, std::uint64_t seed) {
  if (budget < box.dim() + 2) {
    throw ArgumentError("Nelder-Mead needs a budget of at least dim + 2 = " + std::to_string(box.dim() + 2));
  }
  detail::Search search(obj, box, budget, target);
  Rng rng(seed);
  std::vector<double> x0(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) x0[i] = rng.uniform(box[i].lo, box[i].hi);
  try {
    const double f0 = search.eval(x0);
    const auto local = detail::simplex_descent(search, box, x0, f0, budget);
    return search.finish(local.converged ? Termination::Convergence : Termination::Budget);
  } catch (const detail::Stop& stop) {
    return search.finish(stop.reason);
  }
}

}  // namespace stlf::optim
