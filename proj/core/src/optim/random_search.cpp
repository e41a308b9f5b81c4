#include "search.hpp"
#include "stlf/optim/algorithms.hpp"
#include "stlf/rng.hpp"

namespace stlf::optim {

OptResult random_search(Objective& obj, const Box& box, std::size_t budget, double target, std::uint64_t seed) {
  if (budget == 0) throw ArgumentError("random search needs a budget of at least 1");
  detail::Search search(obj, box, budget, target);
  Rng rng(seed);
  try {
    while (true) {
      std::vector<double> x(box.dim());
      for (std::size_t i = 0; i < box.dim(); ++i) x[i] = rng.uniform(box[i].lo, box[i].hi);
      search.eval(std::move(x));
    }
  } catch (const detail::Stop& stop) {
    return search.finish(stop.reason);
  }
}

}  // namespace stlf::optim
