#pragma once

// Double-exponential (tanh-sinh) quadrature for integrands with algebraic
// endpoint singularities.

#include <cstddef>
#include <functional>
#include <vector>

#include "jetgeo/poly.hpp"

namespace jetgeo {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool finite = true;
  int levels = 0;
};

/// Integrand receiving x together with the distances dl = x - lo and
/// dr = hi - x, computed without cancellation near the ends.
using EndpointIntegrand = std::function<double(double x, double dl, double dr)>;

/// Integrates f over I. order_lo / order_hi describe the endpoint behaviour
/// f ~ d^(-order); an order >= 1 makes the integral divergent and the result
/// is reported as +inf (or -inf with divergence_sign < 0) without sampling.
/// Throws QuadratureToleranceNotMet when refinement stalls.
QuadResult integrate_endpoint_singular(const EndpointIntegrand& f, Interval I, double order_lo, double order_hi,
                                       double tol = 1e-10, double divergence_sign = 1.0);

namespace detail {

/// Adds to sums[0..m) the weighted integrand sums over a batch of nodes given by
/// their distances to the two interval ends and their quadrature weights.
using BatchEval =
    std::function<void(const double* dl, const double* dr, const double* w, std::size_t n, double* sums)>;

/// Shared level-refinement driver for m integrands over an interval of length len.
std::vector<QuadResult> tanh_sinh_batch(double len, std::size_t m, const BatchEval& eval, double tol,
                                        int max_level = 11);

}  // namespace detail

/// Integrals of N(x) / sqrt(1 - G(x)^2) over sub-ranges of a hill interval of G.
/// Each piece is expanded about the nearer hill endpoint, where the known
/// zeros of 1 -+ G and of N are divided out exactly, so the endpoint factor is
/// never formed by cancellation.
class HillIntegrator {
 public:
  HillIntegrator(const Polynomial& G, const HillInterval& I);

  const HillInterval& hill() const { return I_; }

  /// One result per numerator; [u, v] must lie in the hill.
  std::vector<QuadResult> integrate(const std::vector<Polynomial>& numerators, double u, double v,
                                    double tol = 1e-10) const;

  /// 1 - G(x)^2 evaluated from the endpoint expansions.
  double one_minus_G2(double x) const;

 private:
  struct Anchor {
    double at = 0.0;
    double dir = 1.0;     // x = at + dir * s
    int m = 0;            // order of the zero of 1 - sigma G at the anchor
    Polynomial A_red;     // (1 - sigma G)(at + dir s) / s^m
    Polynomial B;         // (1 + sigma G)(at + dir s)
  };

  std::vector<QuadResult> integrate_piece(const Anchor& a, const std::vector<Polynomial>& numerators, double sa,
                                          double sb, double tol) const;
  const Anchor& anchor_for(double x) const;

  Polynomial G_;
  HillInterval I_;
  Anchor lo_, hi_;
  std::vector<double> interior_crit_;
};

}  // namespace jetgeo
