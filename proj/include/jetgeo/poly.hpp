#pragma once

// Real polynomials in one variable, real-root isolation and hill intervals.

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jetgeo {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Dense polynomial with coefficients in ascending powers. Trailing zero
/// coefficients are trimmed, so degree() is the index of the last nonzero
/// coefficient; the zero polynomial has degree 0.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(int power, double c = 1.0);

  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int i) const;

  double operator()(double x) const;
  double eval(double x) const { return (*this)(x); }
  double eval_deriv(double x, int order) const;

  Polynomial derivative(int order = 1) const;

  /// max |a_i|
  double coeff_norm() const;
  /// sum |a_i| |x|^i, the scale of Horner rounding error at x
  double abs_eval_bound(double x) const;

  /// q(h) = p(c + h)
  Polynomial taylor_shift(double c) const;
  /// q(t) = p(x0 + u t)
  Polynomial compose_affine(double x0, double u) const;
  /// Copy with coefficients below `order` set to exactly zero.
  Polynomial with_zero_low_order(int order) const;

  bool is_even(double tol = 0.0) const;
  bool is_odd(double tol = 0.0) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);
  friend Polynomial operator+(double c, const Polynomial& p);
  friend Polynomial operator-(double c, const Polynomial& p);
  Polynomial operator-() const { return -1.0 * *this; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

double eval(const Polynomial& F, double x);
double eval_deriv(const Polynomial& F, double x, int order);

struct Root {
  double x = 0.0;
  int multiplicity = 1;
};

/// All real roots in `window`, sorted, with multiplicities. Multiple roots are
/// found as critical points (roots of the derivative chain) at which the
/// polynomial itself vanishes; simple roots are bracketed between consecutive
/// critical points and polished by bisection.
std::vector<Root> real_roots(const Polynomial& F, Interval window);

/// |F(x)| <= max(1e-12 (1 + ||F||), Horner rounding bound at x)
bool is_numerical_root(const Polynomial& F, double x);
double root_residual_tolerance(const Polynomial& F, double x);

/// Cauchy bound: every real root lies in [-R, R].
double root_bound(const Polynomial& F);

/// Order of vanishing of F at x (0 if F(x) != 0), capped at F.degree() + 1.
int vanishing_order(const Polynomial& F, double x, double rel_tol = 1e-9);

/// sup over the window of |F|, by critical-point enumeration
double sup_norm_on(const Polynomial& F, Interval window);

enum class EndpointKind { Regular, Critical };
std::string to_string(EndpointKind kind);

/// Compact interval with |F| = 1 at both ends and |F| < 1 inside.
struct HillInterval {
  double lo = 0.0;
  double hi = 0.0;
  EndpointKind lo_kind = EndpointKind::Regular;
  EndpointKind hi_kind = EndpointKind::Regular;
  /// Exactly +1 or -1 for compact hills.
  double lo_value = 0.0;
  double hi_value = 0.0;
  /// Set for constant polynomials with |F| < 1: the hill is the whole line
  /// and has been clipped to the query window.
  bool clipped = false;

  Interval interval() const { return {lo, hi}; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// True if |F'(x)| <= 1e-9 (1 + ||F'||).
bool is_critical_point(const Polynomial& F, double x);

std::vector<HillInterval> hill_intervals(const Polynomial& F, Interval window);

/// The hill interval of a non-constant F containing x, if |F(x)| <= 1.
std::optional<HillInterval> hill_interval_containing(const Polynomial& F, double x);

/// Checks |F| = 1 at the ends and |F| < 1 on a dense interior sample.
bool validate_hill(const Polynomial& F, const HillInterval& I, int samples = 1000);

struct AffineMap {
  double x0 = 0.0;
  double u = 1.0;

  double operator()(double xt) const { return x0 + u * xt; }
  double inverse(double x) const { return (x - x0) / u; }
};

struct UnitaryForm {
  Polynomial F_hat;
  AffineMap h;
  HillInterval unit_hill;
};

/// F_hat(t) = F(x0 + u t) with u = x1 - x0, so that F_hat has hill [0, 1].
UnitaryForm normalize_to_unitary(const Polynomial& F, const HillInterval& I);

struct DirectTypeFactorization {
  int k1 = 0;
  int k2 = 0;
  Polynomial q;
  double q_max = 0.0;

  /// 1 - x^k1 (1-x)^k2 q(x)
  Polynomial reconstruct() const;
  /// x^k1 (1-x)^k2 q(x)
  Polynomial bump() const;
};

/// F = 1 - x^k1 (1-x)^k2 q(x) for a unitary direct-type F.
DirectTypeFactorization direct_type_factorize(const Polynomial& F);

struct MarkovCheck {
  double sup_norm = 0.0;
  double deriv_sup = 0.0;
  double bound = 0.0;
  bool ok = true;
  /// k^2 ||F||, the constant as printed for the unit interval
  double printed_bound = 0.0;
  bool printed_ok = true;
};

/// sup norms of F and F' on [0, 1] and the Markov inequality with the sharp
/// [0, 1] constant 2 k^2.
MarkovCheck markov_bound_check(const Polynomial& F);

/// G = a + b F.
struct PencilElement {
  double a = 0.0;
  double b = 1.0;
  Polynomial base;

  Polynomial G() const { return a + b * base; }
  double operator()(double x) const { return a + b * base(x); }
};

}  // namespace jetgeo
