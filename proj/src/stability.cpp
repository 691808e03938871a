#include "fracstab/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fracstab/boundary.hpp"
#include "fracstab/errors.hpp"

namespace fracstab {

using detail::require;

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::AsymptoticallyStable: return "AsymptoticallyStable";
    case VerdictKind::Unstable: return "Unstable";
    case VerdictKind::OnBoundary: return "OnBoundary";
    case VerdictKind::NotAsymptoticallyStable: return "NotAsymptoticallyStable";
  }
  return "?";
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::OrderIndependent: return "OrderIndependent";
    case Provenance::OrderDependentCurve: return "OrderDependentCurve";
    case Provenance::RootCount: return "RootCount";
  }
  return "?";
}

Complex delta_eval(Complex s, const Coefficients& c, const FractionalOrders& o) {
  return principal_power(s, o.q()) + c.alpha * principal_power(s, o.q1()) +
         c.beta * principal_power(s, o.q2()) + c.gamma;
}

Complex delta_derivative(Complex s, const Coefficients& c, const FractionalOrders& o) {
  return o.q() * principal_power(s, o.q() - 1.0) +
         c.alpha * o.q1() * principal_power(s, o.q1() - 1.0) +
         c.beta * o.q2() * principal_power(s, o.q2() - 1.0);
}

std::optional<StabilityVerdict> order_independent_verdict(const Coefficients& c) {
  if (c.gamma < 0.0 || c.alpha + c.beta + c.gamma + 1.0 <= 0.0) {
    return StabilityVerdict{VerdictKind::Unstable, std::nullopt, Provenance::OrderIndependent};
  }
  if (c.alpha > 0.0 && c.beta > 0.0 && c.gamma > 0.0) {
    return StabilityVerdict{VerdictKind::AsymptoticallyStable, std::nullopt,
                            Provenance::OrderIndependent};
  }
  return std::nullopt;
}

double decay_exponent(const FractionalOrders& o) {
  double best = 1.0;
  bool found = false;
  for (double order : {o.q1(), o.q2(), o.q()}) {
    const double frac = order - std::floor(order);
    if (frac > 0.0) {
      best = std::min(best, frac);
      found = true;
    }
  }
  if (!found) throw PreconditionError("decay_exponent: every order is an integer");
  return best;
}

StabilityVerdict classify(const Coefficients& c, const FractionalOrders& o, double tol) {
  require(std::isfinite(c.alpha) && std::isfinite(c.beta) && std::isfinite(c.gamma),
          "classify: coefficients must be finite");
  if (auto verdict = order_independent_verdict(c)) {
    if (verdict->kind == VerdictKind::AsymptoticallyStable) verdict->decay_exponent = decay_exponent(o);
    return *verdict;
  }
  if (c.gamma == 0.0) {
    return {VerdictKind::NotAsymptoticallyStable, std::nullopt, Provenance::OrderIndependent};
  }
  const double critical_beta = phi(c.gamma, o, c.alpha);
  const double band = tol * (1.0 + std::abs(critical_beta));
  if (c.beta > critical_beta + band) {
    return {VerdictKind::AsymptoticallyStable, decay_exponent(o), Provenance::OrderDependentCurve};
  }
  if (c.beta < critical_beta - band) {
    return {VerdictKind::Unstable, std::nullopt, Provenance::OrderDependentCurve};
  }
  return {VerdictKind::OnBoundary, std::nullopt, Provenance::OrderDependentCurve};
}

double positive_root_xstar(double A, double B, double eps) {
  require(A >= 0.0 && std::isfinite(A), "positive_root_xstar: A must be non-negative");
  require(B > 0.0 && std::isfinite(B), "positive_root_xstar: B must be positive");
  require(eps > 0.0 && eps < 1.0, "positive_root_xstar: eps must lie in (0, 1)");
  if (A == 0.0) return B;

  auto f = [&](double x) { return x - A * std::pow(x, eps) - B; };
  // f(B) = -A B^eps < 0, and f grows like x.
  double lo = B;
  double hi = B + A * std::pow(std::max(1.0, B), eps);
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 300 && (hi - lo) > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// Bounds with |gamma| in place of gamma; the inequalities only use the
// modulus, so this also covers gamma < 0.
Annulus modulus_bounds(const Coefficients& c, const FractionalOrders& o) {
  const double g = std::abs(c.gamma);
  const double a = std::abs(c.alpha) + std::abs(c.beta);
  const double q = o.q();
  const double inner = std::pow(positive_root_xstar(a / g, 1.0 / g, 1.0 - o.q1() / q) + 1.0, -1.0 / q);
  const double outer = std::pow(positive_root_xstar(a, g, o.q2() / q) + 1.0, 1.0 / q);
  return {inner, outer};
}

constexpr double kMaxPhaseStep = std::numbers::pi / 4.0;
constexpr int kInitialPieces = 16;
constexpr int kMaxDepth = 60;
constexpr double kMaxReach = 0.5;

class PhaseAccumulator {
 public:
  PhaseAccumulator(const Coefficients& c, const FractionalOrders& o, double floor)
      : c_(c), o_(o), floor_(floor) {}

  // Net change of arg Delta along radius * e^{i theta}, theta: from -> to.
  double arc(double radius, double from, double to) const {
    return along([&](double t) { return std::polar(radius, from + t * (to - from)); });
  }

  // Along the ray at angle theta, r: from -> to, spaced geometrically so
  // that both ends are resolved even when to / from is huge.
  double ray(double theta, double from, double to) const {
    return along([&](double t) { return std::polar(from * std::pow(to / from, t), theta); });
  }

  // Along Re s = x from Im s = from to Im s = to (same sign), geometric in
  // |Im s|.
  double vertical(double x, double from, double to) const {
    return along([&](double t) { return Complex(x, from * std::pow(to / from, t)); });
  }

 private:
  Complex value(Complex s) const {
    const Complex v = delta_eval(s, c_, o_);
    if (!(std::abs(v) >= floor_)) {
      throw BoundaryProximity("count_unstable_roots: |Delta| below tolerance on the contour");
    }
    return v;
  }

  struct Sample {
    double t;
    Complex s;
    Complex v;
    double rate;  // |Delta'| / |Delta|, inverse of the Newton distance to a root
  };

  template <typename Path>
  Sample sample(const Path& path, double t) const {
    const Complex s = path(t);
    const Complex v = value(s);
    return {t, s, v, std::abs(delta_derivative(s, c_, o_)) / std::abs(v)};
  }

  template <typename Path>
  double along(Path path) const {
    double total = 0.0;
    Sample prev = sample(path, 0.0);
    for (int k = 1; k <= kInitialPieces; ++k) {
      const Sample next = sample(path, static_cast<double>(k) / kInitialPieces);
      total += refine(path, prev, next, 0);
      prev = next;
    }
    return total;
  }

  // A piece is accepted once its phase step is small and it is short
  // compared with the Newton distance to the nearest root at both ends,
  // so a root passing close to a long edge cannot alias away its half turn.
  template <typename Path>
  double refine(const Path& path, const Sample& a, const Sample& b, int depth) const {
    const double step = std::arg(b.v / a.v);
    const double reach = std::abs(b.s - a.s) * std::max(a.rate, b.rate);
    if (std::abs(step) < kMaxPhaseStep && reach < kMaxReach) return step;
    if (depth >= kMaxDepth) {
      throw BoundaryProximity("count_unstable_roots: phase unresolved near the contour");
    }
    const Sample m = sample(path, 0.5 * (a.t + b.t));
    return refine(path, a, m, depth + 1) + refine(path, m, b, depth + 1);
  }

  const Coefficients& c_;
  const FractionalOrders& o_;
  double floor_;
};

// Polar box r0 <= |s| <= r1, th0 <= arg s <= th1.
struct Box {
  double r0, r1, th0, th1;
  int count;
};

int winding_count(double phase, double* residual = nullptr) {
  const double turns = phase / (2.0 * std::numbers::pi);
  const double nearest = std::round(turns);
  if (residual) *residual = std::abs(turns - nearest);
  if (std::abs(turns - nearest) >= 0.05) {
    throw NumericalError("count_unstable_roots: winding residual too large");
  }
  return static_cast<int>(nearest);
}

int box_count(const PhaseAccumulator& acc, const Box& b) {
  const double phase = acc.ray(b.th0, b.r0, b.r1) + acc.arc(b.r1, b.th0, b.th1) +
                       acc.ray(b.th1, b.r1, b.r0) + acc.arc(b.r0, b.th1, b.th0);
  return winding_count(phase);
}

struct Located {
  Complex root;
  bool converged;
};

Located newton(const Coefficients& c, const FractionalOrders& o, Complex start) {
  const double stop = 1e-12 * (1.0 + std::abs(c.gamma));
  Complex s = start;
  for (int iter = 0; iter < 50; ++iter) {
    const Complex v = delta_eval(s, c, o);
    if (std::abs(v) < stop) return {s, true};
    const Complex d = delta_derivative(s, c, o);
    if (d == Complex(0.0, 0.0)) break;
    s -= v / d;
    if (!(s.real() > 0.0) || !std::isfinite(s.imag())) break;
  }
  if (std::abs(delta_eval(s, c, o)) < stop) return {s, true};
  return {start, false};
}

bool inside(const Box& b, Complex s) {
  const double r = std::abs(s);
  const double th = std::arg(s);
  const double mr = 1e-9 * (b.r1 - b.r0);
  const double mt = 1e-9 * (b.th1 - b.th0);
  return r >= b.r0 - mr && r <= b.r1 + mr && th >= b.th0 - mt && th <= b.th1 + mt;
}

void locate_roots(const Coefficients& c, const FractionalOrders& o, const PhaseAccumulator& acc,
                  Box top, double cluster_size, RootCount& out) {
  // Off-centre splits keep the new edges away from the real axis, where
  // real roots and conjugate-pair symmetry would otherwise put them.
  constexpr std::array<double, 5> fractions{0.5123, 0.4731, 0.5567, 0.4419, 0.6011};
  std::vector<std::pair<Box, int>> work{{top, 0}};
  while (!work.empty()) {
    auto [box, depth] = work.back();
    work.pop_back();
    const double r_mid = std::sqrt(box.r0) * std::sqrt(box.r1);
    const Complex centre = std::polar(r_mid, 0.5 * (box.th0 + box.th1));
    const double size = std::max(box.r1 - box.r0, box.r1 * (box.th1 - box.th0));
    const bool tiny = size < cluster_size || depth > 200;

    if (box.count == 1 || tiny) {
      const Located hit = newton(c, o, centre);
      if ((hit.converged && inside(box, hit.root)) || tiny) {
        out.roots.push_back(hit.converged ? hit.root : centre);
        out.multiplicities.push_back(box.count);
        out.coarse.push_back(!hit.converged);
        continue;
      }
    }

    bool split = false;
    for (double fr : fractions) {
      for (double ft : fractions) {
        const double rm = box.r0 * std::pow(box.r1 / box.r0, fr);
        const double tm = box.th0 + ft * (box.th1 - box.th0);
        std::array<Box, 4> kids{Box{box.r0, rm, box.th0, tm, 0}, Box{rm, box.r1, box.th0, tm, 0},
                                Box{box.r0, rm, tm, box.th1, 0}, Box{rm, box.r1, tm, box.th1, 0}};
        try {
          int total = 0;
          for (Box& k : kids) {
            k.count = box_count(acc, k);
            total += k.count;
          }
          if (total != box.count) continue;
        } catch (const NumericalError&) {
          continue;
        }
        for (const Box& k : kids) {
          if (k.count > 0) work.push_back({k, depth + 1});
        }
        split = true;
        break;
      }
      if (split) break;
    }
    if (!split) throw NumericalError("count_unstable_roots: root localisation failed");
  }
}

}  // namespace

Annulus root_modulus_bounds(const Coefficients& c, const FractionalOrders& o) {
  require(c.gamma > 0.0, "root_modulus_bounds: gamma must be positive");
  return modulus_bounds(c, o);
}

RootCount count_unstable_roots(const Coefficients& c, const FractionalOrders& o, double tol) {
  require(c.gamma != 0.0, "count_unstable_roots: gamma must be non-zero");
  require(tol > 0.0, "count_unstable_roots: tol must be positive");

  RootCount out;
  out.annulus = modulus_bounds(c, o);
  const double l = out.annulus.inner;
  const double L = out.annulus.outer;
  if (!(l > 0.0) || !std::isfinite(L)) {
    throw NumericalError("count_unstable_roots: modulus bounds out of floating-point range");
  }
  const double delta = 1e-8 * l;
  const PhaseAccumulator acc(c, o, tol * (1.0 + std::abs(c.gamma)));

  const double outer_angle = std::acos(delta / L);
  const double inner_angle = std::acos(delta / l);
  const double outer_height = L * std::sin(outer_angle);
  const double inner_height = l * std::sin(inner_angle);

  // Counterclockwise: outer arc up, axis segment down, inner arc back
  // (clockwise), lower axis segment down.
  const double phase = acc.arc(L, -outer_angle, outer_angle) +
                       acc.vertical(delta, outer_height, inner_height) +
                       acc.arc(l, inner_angle, -inner_angle) +
                       acc.vertical(delta, -inner_height, -outer_height);
  out.winding = phase / (2.0 * std::numbers::pi);
  out.count = winding_count(phase, &out.winding_residual);
  if (out.count < 0) throw NumericalError("count_unstable_roots: negative winding number");
  if (out.count == 0) return out;

  // The polar box reaching to arg s = +-(pi/2 - asin(delta/L)) contains the
  // contour's region plus a sliver within delta of the imaginary axis.
  const double edge = std::numbers::pi / 2.0 - std::asin(delta / L);
  Box top{l, L, -edge, edge, 0};
  top.count = box_count(acc, top);
  if (top.count != out.count) {
    throw BoundaryProximity("count_unstable_roots: roots within delta of the imaginary axis");
  }
  locate_roots(c, o, acc, top, 1e-6 * l, out);
  return out;
}

}  // namespace fracstab
