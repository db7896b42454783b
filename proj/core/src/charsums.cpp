#include "pv/charsums.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pv {

namespace {

class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    add_one(re_, re_c_, v.real());
    add_one(im_, im_c_, v.imag());
  }
  std::complex<double> value() const { return {re_, im_}; }

 private:
  static void add_one(double& sum, double& comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

struct Point {
  double x;
  double y;
  std::uint32_t index;
};

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

double cross(const Point& o, const Point& a, const Point& b) {
  return cross(a.x - o.x, a.y - o.y, b.x - o.x, b.y - o.y);
}

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Tracks the farthest pair seen, preferring the smallest witness among near-ties.
class FarthestPair {
 public:
  explicit FarthestPair(std::uint32_t modulus) : modulus_(modulus) {}

  void consider(const Point& a, const Point& b) {
    const double d2 = dist2(a, b);
    const IntervalWitness w = witness(a.index, b.index);
    constexpr double kRelTie = 1e-12;
    if (!found_ || d2 > best_ * (1.0 + kRelTie)) {
      found_ = true;
      best_ = d2;
      witness_ = w;
    } else if (d2 >= best_ * (1.0 - kRelTie)) {
      best_ = std::max(best_, d2);
      if (std::tie(w.first, w.last) < std::tie(witness_.first, witness_.last)) witness_ = w;
    }
  }

  IntervalMax result() const { return {std::sqrt(best_), witness_}; }

 private:
  IntervalWitness witness(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    // chi(0) = 0 for q > 1, so a sum starting after index 0 may start at 0.
    const std::uint32_t first = (i == 0 && modulus_ > 1) ? 0 : i + 1;
    return {first, j};
  }

  std::uint32_t modulus_;
  bool found_ = false;
  double best_ = 0.0;
  IntervalWitness witness_{};
};

// Points that can lie on the hull: everything except what is strictly inside the
// octagon spanned by the extremes in eight directions. Usually a small fraction.
std::vector<Point> outside_octagon(const PrefixWalk& walk) {
  const auto& w = walk.points;
  constexpr int dir[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  std::array<std::uint32_t, 8> ext{};
  std::array<double, 8> best;
  best.fill(-std::numeric_limits<double>::infinity());
  double xmin = w[0].real(), xmax = xmin, ymin = w[0].imag(), ymax = ymin;
  for (std::uint32_t k = 0; k < w.size(); ++k) {
    const double x = w[k].real(), y = w[k].imag();
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
    for (int d = 0; d < 8; ++d) {
      const double v = dir[d][0] * x + dir[d][1] * y;
      if (v > best[d]) {
        best[d] = v;
        ext[d] = k;
      }
    }
  }
  std::vector<Point> corners;
  for (int d = 0; d < 8; ++d) {
    const Point c{w[ext[d]].real(), w[ext[d]].imag(), ext[d]};
    if (corners.empty() || corners.back().x != c.x || corners.back().y != c.y) corners.push_back(c);
  }
  while (corners.size() > 1 && corners.front().x == corners.back().x &&
         corners.front().y == corners.back().y)
    corners.pop_back();

  const double extent2 = (xmax - xmin) * (xmax - xmin) + (ymax - ymin) * (ymax - ymin);
  const double margin = 1e-9 * std::max(1.0, extent2);
  std::vector<Point> out;
  out.reserve(w.size());
  for (std::uint32_t k = 0; k < w.size(); ++k) {
    const Point p{w[k].real(), w[k].imag(), k};
    bool inside = corners.size() >= 3;
    for (std::size_t c = 0; inside && c < corners.size(); ++c)
      inside = cross(corners[c], corners[(c + 1) % corners.size()], p) > margin;
    if (!inside) out.push_back(p);
  }
  return out;
}

}  // namespace

PrefixWalk prefix_walk(const DirichletCharacter& chi) { return prefix_walk(chi.values()); }

PrefixWalk prefix_walk(std::span<const std::complex<double>> values) {
  const auto q = static_cast<std::uint32_t>(values.size());
  if (q == 0) throw std::invalid_argument("prefix_walk: empty value table");
  PrefixWalk walk;
  walk.points.reserve(q + 1);
  walk.points.emplace_back(0.0, 0.0);
  CompensatedSum sum;
  for (std::uint32_t k = 1; k <= q; ++k) {
    sum.add(values[k % q]);
    walk.points.push_back(sum.value());
  }
  return walk;
}

IntervalMax max_interval_sum(const PrefixWalk& walk) {
  if (walk.points.empty()) throw std::invalid_argument("max_interval_sum: empty walk");
  const auto modulus = static_cast<std::uint32_t>(walk.points.size() - 1);

  std::vector<Point> pts = outside_octagon(walk);
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return std::tie(a.x, a.y, a.index) < std::tie(b.x, b.y, b.index);
  });
  double xmin = pts.front().x, xmax = pts.back().x, ymin = pts.front().y, ymax = ymin;
  for (const auto& p : pts) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double extent2 = (xmax - xmin) * (xmax - xmin) + (ymax - ymin) * (ymax - ymin);

  // The walk revisits points, and the copies differ by rounding noise. Merge them
  // (keeping the smallest index) so the hull never sees spurious tiny edges.
  const double merge = 1e-12 * std::max(1.0, std::sqrt(extent2));
  std::vector<Point> merged;
  merged.reserve(pts.size());
  for (const auto& p : pts) {
    bool duplicate = false;
    for (auto it = merged.rbegin(); it != merged.rend() && p.x - it->x <= merge; ++it) {
      if (std::abs(p.y - it->y) <= merge) {
        it->index = std::min(it->index, p.index);
        duplicate = true;
        break;
      }
    }
    if (!duplicate) merged.push_back(p);
  }
  pts = std::move(merged);

  FarthestPair best(modulus);
  if (pts.size() == 1) {
    best.consider(pts.front(), pts.front());
    return best.result();
  }

  // Collinear walks (every real character) reduce to the extent along one direction.
  const Point& lo = pts.front();
  const Point& hi = pts.back();
  const double dx = hi.x - lo.x, dy = hi.y - lo.y;
  const double span2 = dx * dx + dy * dy;
  double max_cross = 0.0;
  for (const auto& p : pts) max_cross = std::max(max_cross, std::abs(cross(lo, hi, p)));
  if (max_cross <= 1e-12 * std::max(1.0, span2)) {
    const Point* pmin = &pts.front();
    const Point* pmax = &pts.front();
    double tmin = 0.0, tmax = 0.0;
    for (const auto& p : pts) {
      const double t = (p.x - lo.x) * dx + (p.y - lo.y) * dy;
      if (t < tmin || (t == tmin && p.index < pmin->index)) { tmin = t; pmin = &p; }
      if (t > tmax || (t == tmax && p.index < pmax->index)) { tmax = t; pmax = &p; }
    }
    best.consider(*pmin, *pmax);
    return best.result();
  }

  // Andrew's monotone chain, counter-clockwise, with an exact sign test. A tolerance
  // here is unsafe: in x order a column of near-equal x can double back, and the
  // turning point is then an extreme vertex that merely looks collinear.
  std::vector<Point> chain(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(chain[k - 2], chain[k - 1], p) <= 0) --k;
    chain[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(chain[k - 2], chain[k - 1], pts[i]) <= 0) --k;
    chain[k++] = pts[i];
  }
  chain.resize(k - 1);

  // Around the closed hull, drop vertices that sit on the segment between their
  // neighbours up to rounding. Left in, their noisy turns can stop the calipers short.
  const double collinear = 1e-12 * std::max(1.0, extent2);
  auto redundant = [&](const Point& prev, const Point& v, const Point& next) {
    const double forward = (v.x - prev.x) * (next.x - v.x) + (v.y - prev.y) * (next.y - v.y);
    return forward > 0 && std::abs(cross(prev, v, next)) <= collinear;
  };
  std::vector<Point> hull;
  hull.reserve(chain.size());
  for (const auto& p : chain) {
    while (hull.size() >= 2 && redundant(hull[hull.size() - 2], hull.back(), p)) hull.pop_back();
    hull.push_back(p);
  }
  // The wrap-around vertices.
  bool changed = true;
  while (changed && hull.size() > 2) {
    changed = false;
    if (redundant(hull[hull.size() - 2], hull.back(), hull.front())) {
      hull.pop_back();
      changed = true;
    } else if (redundant(hull.back(), hull.front(), hull[1])) {
      hull.erase(hull.begin());
      changed = true;
    }
  }
  const std::size_t h = hull.size();

  if (h == 2) {
    best.consider(hull[0], hull[1]);
    return best.result();
  }

  // Rotating calipers: for each edge, advance to its farthest vertex.
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t ni = (i + 1) % h;
    const double ex = hull[ni].x - hull[i].x, ey = hull[ni].y - hull[i].y;
    auto turn = [&](std::size_t v) {
      const std::size_t nv = (v + 1) % h;
      return cross(ex, ey, hull[nv].x - hull[v].x, hull[nv].y - hull[v].y);
    };
    while (turn(j) > 0) j = (j + 1) % h;
    // Neighbours of j too: the next one is antipodal when the opposite edge is
    // parallel, and a near-zero turn can land the advance one vertex off.
    for (const std::size_t v : {(j + h - 1) % h, j, (j + 1) % h}) {
      best.consider(hull[i], hull[v]);
      best.consider(hull[ni], hull[v]);
    }
  }
  return best.result();
}

InitialMax max_initial_sum(const PrefixWalk& walk) {
  if (walk.points.empty()) throw std::invalid_argument("max_initial_sum: empty walk");
  InitialMax out;
  double best = 0.0;
  for (std::uint32_t k = 0; k < walk.points.size(); ++k) {
    const double v = std::norm(walk.points[k]);
    if (v > best) {
      best = v;
      out.last = k;
    }
  }
  out.value = std::abs(walk.points[out.last]);
  return out;
}

double brute_force_s(const DirichletCharacter& chi, std::uint32_t cap) {
  const std::uint32_t q = chi.modulus();
  if (q > cap)
    throw std::domain_error("brute_force_s: modulus " + std::to_string(q) + " exceeds cap " +
                            std::to_string(cap));
  const auto values = chi.values();
  double best = 0.0;
  for (std::uint32_t first = 1; first <= q; ++first) {
    CompensatedSum sum;
    for (std::uint32_t last = first; last <= q; ++last) {
      sum.add(values[last % q]);
      best = std::max(best, std::abs(sum.value()));
    }
  }
  return best;
}

std::complex<double> interval_sum(const DirichletCharacter& chi, IntervalWitness interval) {
  CompensatedSum sum;
  for (std::uint32_t n = interval.first; n <= interval.last; ++n) sum.add(chi(n));
  return sum.value();
}

CharSumResult char_sums(const DirichletCharacter& chi) { return char_sums(chi, chi.values()); }

CharSumResult char_sums(const DirichletCharacter& chi, std::span<const std::complex<double>> values) {
  if (values.size() != chi.modulus())
    throw std::invalid_argument("char_sums: value table does not match the modulus");
  const auto walk = prefix_walk(values);
  const auto s = max_interval_sum(walk);
  const auto t = max_initial_sum(walk);
  CharSumResult out;
  out.s_chi = s.value;
  out.s_witness = s.witness;
  out.t_chi = t.value;
  out.t_witness = t.last;
  if (chi.parity() == Parity::even)
    out.parity_consistent = std::abs(out.s_chi - 2.0 * out.t_chi) < kParityTolerance;
  return out;
}

}  // namespace pv
