#include "gtht/exponent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gtht/errors.hpp"

namespace gtht {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln 2

double log2_1m(double x) {  // log2(1-x), stable for small x
  return std::log1p(-x) * kInvLn2;
}

// q as a function of z = 1-y. The quotient (1-y^k)/(1-y) is the geometric
// sum 1 + y + ... + y^{k-1}, so it evaluates without cancellation even with
// the root next to y = 1; it is strictly decreasing in z, from k*Q at z->0
// to Q at z=1.
double q_of_z(int k, double q_col, double z) {
  const double y = 1.0 - z;
  double sum = 1.0, pw = 1.0;
  for (int i = 1; i < k; ++i) {
    pw *= y;
    sum += pw;
  }
  return q_col * sum;
}

double solve_z(int k, double q_col, double q_union) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 90 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (q_of_z(k, q_col, mid) > q_union)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void check_A_domain(int k, double q_col, double q_union) {
  if (k < 1) throw input_error("exponent_A: k must be >= 1");
  if (!(q_col > 0.0) || !(q_col < 1.0))
    throw input_error("exponent_A: Q must lie in (0,1)");
  const double hi = std::min(1.0, k * q_col);
  if (!(q_union >= q_col) || !(q_union <= hi))
    throw input_error("exponent_A: q must lie in [Q, min(1,kQ)]");
}

// Continuity limit of A at q -> kQ (requires kQ < 1).
double A_upper_limit(int k, double q_col) {
  const double kq = k * q_col;
  return (1.0 - kq) * log2_1m(kq) + kq * std::log2(q_col) + k * entropy(q_col);
}

}  // namespace

double entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw input_error("entropy: argument must lie in [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * log2_1m(q);
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

double solve_y(int k, double q_col, double q_union) {
  check_A_domain(k, q_col, q_union);
  const double hi = std::min(1.0, k * q_col);
  if (q_union == q_col || q_union == hi)
    throw input_error("solve_y: q must lie strictly inside (Q, min(1,kQ))");
  return 1.0 - solve_z(k, q_col, q_union);
}

double exponent_A(int k, double q_col, double q_union) {
  check_A_domain(k, q_col, q_union);
  const double Q = q_col, q = q_union;
  if (q == Q) return (k - 1) * entropy(Q);
  if (k * Q < 1.0 && q == k * Q) return A_upper_limit(k, Q);

  const double z = solve_z(k, Q, q);
  const double log2_y = std::log1p(-z) * kInvLn2;
  const double log2_z = std::log2(z);
  const double head = (q < 1.0) ? (1.0 - q) * log2_1m(q) : 0.0;
  return head + q * std::log2(Q) + k * (q - Q) * log2_y +
         (k * Q - q) * log2_z + k * entropy(Q);
}

EtauResult exponent_wdr_tau(int s, double tau) {
  if (s < 2) throw input_error("exponent_wdr_tau: s must be >= 2");
  if (!(tau > 0.0) || !(tau < 1.0))
    throw input_error("exponent_wdr_tau: tau must lie in (0,1)");

  const double q_lo = -std::expm1(std::log1p(-tau) / (s + 1));  // 1-(1-tau)^{1/(s+1)}
  const double q_hi = -std::expm1(std::log1p(-tau) / s);        // 1-(1-tau)^{1/s}
  const double q_b = tau / s;
  if (!(q_b < q_hi))
    throw input_error("exponent_wdr_tau: degenerate weight interval");

  const auto gap = [&](double Q) {
    return exponent_A(s, Q, tau) - exponent_A(s + 1, Q, tau);
  };

  double a, b;
  if (q_b > q_lo) {
    // At Q = tau/s the heavy-response event has probability zero, so the
    // exponent there is the light-response one.
    const double boundary_value = exponent_A(s + 1, q_b, tau);
    if (A_upper_limit(s, q_b) - boundary_value <= 0.0)
      return {q_b, boundary_value, true};
    a = q_b;
    b = q_hi;
  } else {
    a = q_lo;
    b = q_hi;
  }

  const double margin = (b - a) * 1e-12;
  double lo = a + margin, hi = b - margin;
  const double g_lo = gap(lo), g_hi = gap(hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0))
    throw convergence_error(
        "exponent_wdr_tau: no sign change on (" + std::to_string(lo) + ", " +
        std::to_string(hi) + "): g=" + std::to_string(g_lo) + ", " +
        std::to_string(g_hi));
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double q_star = 0.5 * (lo + hi);
  return {q_star, exponent_A(s, q_star, tau), false};
}

namespace {

// Golden-section maximization on [a,b]; f need only be unimodal near the
// optimum since callers bracket with a fine grid first.
template <class F>
double golden_max(F&& f, double a, double b, double xtol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

WdrExponentResult exponent_wdr(int s) {
  if (s < 2) throw input_error("exponent_wdr: s must be >= 2");
  constexpr int kGrid = 512;
  double best_tau = 0.0, best_val = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < kGrid; ++i) {
    const double tau = static_cast<double>(i) / kGrid;
    const EtauResult r = exponent_wdr_tau(s, tau);
    if (r.value > best_val) {
      best_val = r.value;
      best_tau = tau;
    }
  }
  const double step = 1.0 / kGrid;
  const double lo = std::max(step * 1e-3, best_tau - step);
  const double hi = std::min(1.0 - step * 1e-3, best_tau + step);
  const double tau_star = golden_max(
      [&](double tau) { return exponent_wdr_tau(s, tau).value; }, lo, hi, 1e-8);
  const EtauResult r = exponent_wdr_tau(s, tau_star);
  return {s, tau_star, r.q_star, r.value};
}

namespace {

struct InnerMin {
  double value;
  double q_union;
};

// min over q in [Q, min(1,sQ)) of A(s,Q,q) + [h(Q) - q h(Q/q) - R]^+
InnerMin comp_inner_min(int s, double rate, double q_col) {
  const double q_hi = std::min(1.0, s * q_col);
  const auto obj = [&](double q) {
    const double bracket =
        entropy(q_col) - (q > 0.0 ? q * entropy(q_col / q) : 0.0) - rate;
    return exponent_A(s, q_col, q) + positive_part(bracket);
  };
  constexpr int kGrid = 256;
  double best = std::numeric_limits<double>::infinity(), best_q = q_col;
  for (int j = 0; j <= kGrid; ++j) {
    const double q = q_col + (q_hi - q_col) * j / (kGrid + 1);
    const double v = obj(q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }
  const double step = (q_hi - q_col) / (kGrid + 1);
  double a = std::max(q_col, best_q - step);
  double b = std::min(q_hi - step * 1e-9, best_q + step);
  const double q_ref =
      golden_max([&](double q) { return -obj(q); }, a, b, step * 1e-9);
  const double v_ref = obj(q_ref);
  if (v_ref < best) return {v_ref, q_ref};
  return {best, best_q};
}

}  // namespace

CompExponentResult exponent_comp(int s, double rate) {
  if (s < 2) throw input_error("exponent_comp: s must be >= 2");
  if (!(rate >= 0.0) || !(rate < 1.0))
    throw input_error("exponent_comp: rate must lie in [0,1)");
  constexpr int kGrid = 256;
  double best = -std::numeric_limits<double>::infinity(), best_q_col = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    const double q_col = static_cast<double>(i) / kGrid;
    const double v = comp_inner_min(s, rate, q_col).value;
    if (v > best) {
      best = v;
      best_q_col = q_col;
    }
  }
  const double step = 1.0 / kGrid;
  const double lo = std::max(step * 1e-3, best_q_col - step);
  const double hi = std::min(1.0 - step * 1e-3, best_q_col + step);
  const double q_col_star = golden_max(
      [&](double q_col) { return comp_inner_min(s, rate, q_col).value; }, lo,
      hi, 1e-10);
  const InnerMin inner = comp_inner_min(s, rate, q_col_star);
  const double v_star = inner.value;
  if (v_star >= best)
    return {s, rate, v_star, q_col_star, inner.q_union};
  const InnerMin grid_inner = comp_inner_min(s, rate, best_q_col);
  return {s, rate, grid_inner.value, best_q_col, grid_inner.q_union};
}

double capacity_comp(int s) {
  if (s < 2) throw input_error("capacity_comp: s must be >= 2");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    if (exponent_comp(s, mid).exponent > 1e-9)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double rate_wdr(int s) {
  if (s < 2) throw input_error("rate_wdr: s must be >= 2");
  const double target = exponent_wdr(s).exponent;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    if (exponent_comp(s, mid).exponent > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double lower_bound_error(int n_tests, int n_items, int s) {
  if (s < 1) throw input_error("lower_bound_error: s must be >= 1");
  if (n_items <= s) throw input_error("lower_bound_error: require t > s");
  if (n_tests < 1) throw input_error("lower_bound_error: N must be positive");
  const double t = n_items;
  const double v =
      0.5 * (std::exp2(-static_cast<double>(n_tests) / s) * t / (t - s) -
             s / (t - s));
  return v > 0.0 ? v : 0.0;
}

}  // namespace gtht
