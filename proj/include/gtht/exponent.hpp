#pragma once

namespace gtht {

// Binary entropy in bits, with the 0*log0 = 0 convention.
double entropy(double q);

double positive_part(double x);

// Unique root y in (0,1) of q = Q*(1-y^k)/(1-y). The left side is strictly
// increasing in y, from Q at y->0 to k*Q at y->1. Bisection, |error| < 1e-13.
double solve_y(int k, double q_col, double q_union);

// Exponential decay rate (bits per test) of the probability that k random
// constant-weight-Q*N columns OR to relative weight q:
//   A = (1-q)log2(1-q) + q log2[Q y^k/(1-y)] + kQ log2[(1-y)/y] + k h(Q).
// Defined on Q <= q <= min(1, kQ); the endpoints take the continuity limits
//   A(k,Q,Q)  = (k-1) h(Q),
//   A(k,Q,kQ) = (1-kQ)log2(1-kQ) + kQ log2 Q + k h(Q)   (when kQ < 1).
double exponent_A(int k, double q_col, double q_union);

// Best ensemble weight for a fixed threshold fraction tau.
//
// For Q <= tau/s the weight of any s-column OR is at most s*floor(QN) <= tau*N,
// so the H0-side error is identically zero and the overall exponent is
// A(s+1, Q, tau), increasing in Q up to the boundary Q = tau/s. Past the
// boundary both error events are live and the exponent is
// min{A(s,Q,tau), A(s+1,Q,tau)}. The maximum over Q therefore sits either at
// the boundary itself or at the equalization point A(s,Q,tau) = A(s+1,Q,tau).
struct EtauResult {
  double q_star = 0;    // optimal column-weight fraction Q*
  double value = 0;     // exponent at Q*
  bool boundary = false;  // true when Q* = tau/s (zero H0-side error)
};

EtauResult exponent_wdr_tau(int s, double tau);

struct WdrExponentResult {
  int s = 0;
  double tau_star = 0;
  double q_star = 0;
  double exponent = 0;
};

// max over tau in (0,1) of exponent_wdr_tau: 512-point grid, then
// golden-section refinement to 1e-8 in tau. Requires s >= 2.
WdrExponentResult exponent_wdr(int s);

struct CompExponentResult {
  int s = 0;
  double rate = 0;
  double exponent = 0;
  double q_col_opt = 0;    // maximizing Q
  double q_union_opt = 0;  // minimizing q
};

// Random-coding exponent of the COMP rule at rate R:
//   max_Q min_{q in [Q, min(1,sQ))} { A(s,Q,q) + [h(Q) - q h(Q/q) - R]^+ }.
// Nested 256-point grids with golden-section refinement.
CompExponentResult exponent_comp(int s, double rate);

// sup{ R : exponent_comp(s,R) > 0 }, bisection to 1e-5.
double capacity_comp(int s);

// sup{ R : exponent_comp(s,R) > exponent_wdr(s) }, bisection to 1e-5.
double rate_wdr(int s);

// Converse bound on the worst-distribution error of any rule:
//   max{0, (1/2)(2^{-N/s} t/(t-s) - s/(t-s))}.
double lower_bound_error(int n_tests, int n_items, int s);

}  // namespace gtht
