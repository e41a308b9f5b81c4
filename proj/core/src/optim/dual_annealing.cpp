#include <cmath>
#include <numbers>

#include "search.hpp"
#include "stlf/optim/algorithms.hpp"
#include "stlf/rng.hpp"

namespace stlf::optim {

void AnnealParams::validate() const {
  if (!(visit > 1.0 && visit <= 3.0)) throw ArgumentError("visit parameter q_v must lie in (1, 3]");
  if (!(initial_temp > 0.0) || !std::isfinite(initial_temp)) {
    throw ArgumentError("initial temperature must be positive and finite");
  }
  if (!(accept < 1.0) || !std::isfinite(accept)) throw ArgumentError("accept parameter q_a must be below 1");
  if (!(restart_temp_ratio > 0.0 && restart_temp_ratio < 1.0)) {
    throw ArgumentError("restart temperature ratio must lie in (0, 1)");
  }
  if (max_iterations == 0) throw ArgumentError("max_iterations must be at least 1");
}

namespace {

constexpr double kTailLimit = 1e8;
constexpr double kMinVisitBound = 1e-10;
constexpr std::size_t kNotImprovedMax = 1000;

// Distorted Cauchy-Lorentz visiting distribution (Tsallis-Stariolo).
class Visiting {
 public:
  Visiting(const Box& box, double qv, Rng& rng) : box_(box), qv_(qv), rng_(rng) {
    const double factor2 = std::exp((4.0 - qv) * std::log(qv - 1.0));
    const double factor3 = std::exp((2.0 - qv) * std::log(2.0) / (qv - 1.0));
    factor4_p_ = std::sqrt(std::numbers::pi) * factor2 / (factor3 * (3.0 - qv));
    const double factor5 = 1.0 / (qv - 1.0) - 0.5;
    const double d1 = 2.0 - factor5;
    factor6_ = std::numbers::pi * (1.0 - factor5) / std::sin(std::numbers::pi * (1.0 - factor5)) /
               std::exp(std::lgamma(d1));
  }

  // Full move for step < dim, single-coordinate move afterwards.
  std::vector<double> visit(const std::vector<double>& x, std::size_t step, double temperature) {
    const std::size_t dim = x.size();
    std::vector<double> out = x;
    if (step < dim) {
      std::vector<double> v(dim);
      for (auto& vi : v) vi = draw(temperature);
      const double upper_sample = rng_.uniform();
      const double lower_sample = rng_.uniform();
      for (std::size_t i = 0; i < dim; ++i) {
        if (v[i] > kTailLimit) v[i] = kTailLimit * upper_sample;
        if (v[i] < -kTailLimit) v[i] = -kTailLimit * lower_sample;
        out[i] = wrap(x[i] + v[i], i);
      }
    } else {
      double v = draw(temperature);
      if (v > kTailLimit) {
        v = kTailLimit * rng_.uniform();
      } else if (v < -kTailLimit) {
        v = -kTailLimit * rng_.uniform();
      }
      const std::size_t i = step - dim;
      out[i] = wrap(x[i] + v, i);
    }
    return out;
  }

 private:
  double draw(double temperature) {
    double x = rng_.normal();
    const double y = rng_.normal();
    const double factor1 = std::exp(std::log(temperature) / (qv_ - 1.0));
    const double factor4 = factor4_p_ * factor1;
    x *= std::exp(-(qv_ - 1.0) * std::log(factor6_ / factor4) / (3.0 - qv_));
    const double den = std::exp((qv_ - 1.0) * std::log(std::fabs(y)) / (3.0 - qv_));
    return x / den;
  }

  double wrap(double value, std::size_t i) const {
    const double lo = box_[i].lo;
    const double range = box_[i].width();
    if (!(range > 0.0)) return lo;
    const double b = std::fmod(value - lo, range) + range;
    double out = std::fmod(b, range) + lo;
    if (std::fabs(out - lo) < kMinVisitBound) out += kMinVisitBound;
    return std::clamp(out, lo, box_[i].hi);
  }

  const Box& box_;
  double qv_;
  Rng& rng_;
  double factor4_p_ = 0.0;
  double factor6_ = 0.0;
};

class Annealer {
 public:
  Annealer(detail::Search& search, const Box& box, const AnnealParams& p, Rng& rng)
      : search_(search), box_(box), p_(p), rng_(rng), visiting_(box, p.visit, rng) {}

  Termination run() {
    reset();
    const double t1 = std::exp((p_.visit - 1.0) * std::log(2.0)) - 1.0;
    const double restart_temp = p_.initial_temp * p_.restart_temp_ratio;
    std::size_t iteration = 0;
    while (true) {
      for (std::size_t i = 0; i < p_.max_iterations; ++i) {
        const double s = static_cast<double>(i) + 2.0;
        const double t2 = std::exp((p_.visit - 1.0) * std::log(s)) - 1.0;
        const double temperature = p_.initial_temp * t1 / t2;
        if (iteration >= p_.max_iterations) return Termination::Convergence;
        if (temperature < restart_temp) {
          reset();
          break;
        }
        chain(i, temperature);
        if (p_.local_search) polish();
        ++iteration;
      }
    }
  }

 private:
  void reset() {
    current_.resize(box_.dim());
    for (std::size_t i = 0; i < box_.dim(); ++i) current_[i] = rng_.uniform(box_[i].lo, box_[i].hi);
    current_e_ = search_.eval(current_);
    if (!has_best_) {
      best_ = current_;
      best_e_ = current_e_;
      xmin_ = current_;
      emin_ = current_e_;
      has_best_ = true;
    }
  }

  void chain(std::size_t step, double temperature) {
    temperature_step_ = temperature / static_cast<double>(step + 1);
    ++not_improved_;
    improved_ = step == 0;
    const std::size_t moves = 2 * box_.dim();
    for (std::size_t j = 0; j < moves; ++j) {
      std::vector<double> x = visiting_.visit(current_, j, temperature);
      const double e = search_.eval(x);
      if (e < current_e_) {
        current_ = x;
        current_e_ = e;
        if (e < best_e_) {
          best_ = std::move(x);
          best_e_ = e;
          improved_ = true;
          not_improved_ = 0;
        }
      } else {
        accept_reject(j, e, std::move(x));
      }
    }
  }

  void accept_reject(std::size_t j, double e, std::vector<double> x) {
    const double r = rng_.uniform();
    const double pqv_temp = 1.0 - ((1.0 - p_.accept) * (e - current_e_) / temperature_step_);
    const double pqv = pqv_temp <= 0.0 ? 0.0 : std::exp(std::log(pqv_temp) / (1.0 - p_.accept));
    if (r <= pqv) {
      current_ = std::move(x);
      current_e_ = e;
      xmin_ = current_;
    }
    if (not_improved_ >= not_improved_max_ && (j == 0 || current_e_ < emin_)) {
      emin_ = current_e_;
      xmin_ = current_;
    }
  }

  std::size_t local_cap() const {
    return std::min<std::size_t>(std::max<std::size_t>(box_.dim() * 6, 100), 1000);
  }

  void polish() {
    if (improved_) {
      const auto res = detail::simplex_descent(search_, box_, best_, best_e_, local_cap());
      if (res.f < best_e_) {
        not_improved_ = 0;
        best_ = res.x;
        best_e_ = res.f;
        current_ = res.x;
        current_e_ = res.f;
      }
    }
    if (not_improved_ >= not_improved_max_) {
      const auto res = detail::simplex_descent(search_, box_, xmin_, emin_, local_cap());
      xmin_ = res.x;
      emin_ = res.f;
      not_improved_ = 0;
      not_improved_max_ = box_.dim();
      if (res.f < best_e_) {
        best_ = res.x;
        best_e_ = res.f;
        current_ = res.x;
        current_e_ = res.f;
      }
    }
  }

  detail::Search& search_;
  const Box& box_;
  const AnnealParams& p_;
  Rng& rng_;
  Visiting visiting_;

  std::vector<double> current_, best_, xmin_;
  double current_e_ = 0.0, best_e_ = 0.0, emin_ = 0.0;
  bool has_best_ = false;
  bool improved_ = false;
  double temperature_step_ = 0.0;
  std::size_t not_improved_ = 0;
  std::size_t not_improved_max_ = kNotImprovedMax;
};

}  // namespace

OptResult dual_annealing(Objective& obj, const Box& box, std::size_t budget, double target, std::uint64_t seed,
                         const AnnealParams& params) {
  params.validate();
  if (budget == 0) throw ArgumentError("dual annealing needs a budget of at least 1");
  detail::Search search(obj, box, budget, target);
  Rng rng(seed);
  Annealer annealer(search, box, params, rng);
  try {
    return search.finish(annealer.run());
  } catch (const detail::Stop& stop) {
    return search.finish(stop.reason);
  }
}

}  // namespace stlf::optim
