#include "masr/dse/pareto.hpp"

#include <algorithm>
#include <tuple>

namespace masr::dse {

namespace {

double objective(const ParetoPoint& p, Objective obj) noexcept { return obj == Objective::energy ? p.energy : p.area; }

}  // namespace

bool dominates(const ParetoPoint& a, const ParetoPoint& b, Objective obj) noexcept {
  const double ao = objective(a, obj);
  const double bo = objective(b, obj);
  return a.cycles <= b.cycles && ao <= bo && (a.cycles < b.cycles || ao < bo);
}

void mark_front(std::span<ParetoPoint> points, Objective obj) {
  // sweep in (cycles, objective, id) order; a point survives if its objective beats every
  // earlier survivor's
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::forward_as_tuple(points[a].cycles, objective(points[a], obj), points[a].id) <
           std::forward_as_tuple(points[b].cycles, objective(points[b], obj), points[b].id);
  });
  bool any = false;
  double best = 0.0;
  for (std::size_t i : order) {
    const double o = objective(points[i], obj);
    points[i].dominated = any && o >= best;
    if (!points[i].dominated) {
      best = o;
      any = true;
    }
  }
}

std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points, Objective obj) {
  mark_front(points, obj);
  std::erase_if(points, [](const ParetoPoint& p) { return p.dominated; });
  std::sort(points.begin(), points.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) { return std::tie(a.cycles, a.id) < std::tie(b.cycles, b.id); });
  return points;
}

}  // namespace masr::dse
