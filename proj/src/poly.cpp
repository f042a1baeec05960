#include "jetgeo/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jetgeo/errors.hpp"

namespace jetgeo {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "polynomial coefficient is not finite");
  }
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

Polynomial Polynomial::monomial(int power, double c) {
  if (power < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial power");
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator[](int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(i)];
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::eval_deriv(double x, int order) const {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  if (order == 0) return (*this)(x);
  const int n = static_cast<int>(coeffs_.size());
  if (order >= n) return 0.0;
  // Horner on the falling-factorial weighted coefficients.
  double acc = 0.0;
  for (int i = n - 1; i >= order; --i) {
    double w = 1.0;
    for (int j = 0; j < order; ++j) w *= static_cast<double>(i - j);
    acc = acc * x + w * coeffs_[static_cast<std::size_t>(i)];
  }
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  std::vector<double> c = coeffs_;
  for (int k = 0; k < order; ++k) {
    if (c.size() <= 1) return Polynomial();
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    c = std::move(d);
  }
  return Polynomial(std::move(c));
}

double Polynomial::coeff_norm() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::abs_eval_bound(double x) const {
  const double ax = std::abs(x);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Polynomial Polynomial::taylor_shift(double c) const {
  std::vector<double> b = coeffs_;
  const std::size_t n = b.size();
  if (n <= 1 || c == 0.0) return *this;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) b[j] += c * b[j + 1];
  }
  return Polynomial(std::move(b));
}

Polynomial Polynomial::compose_affine(double x0, double u) const {
  Polynomial shifted = taylor_shift(x0);
  std::vector<double> b(shifted.coeffs().begin(), shifted.coeffs().end());
  double w = 1.0;
  for (double& c : b) {
    c *= w;
    w *= u;
  }
  return Polynomial(std::move(b));
}

Polynomial Polynomial::with_zero_low_order(int order) const {
  std::vector<double> b = coeffs_;
  for (int i = 0; i < order && i < static_cast<int>(b.size()); ++i) b[static_cast<std::size_t>(i)] = 0.0;
  return Polynomial(std::move(b));
}

bool Polynomial::is_even(double tol) const {
  const double scale = tol * (1.0 + coeff_norm());
  for (std::size_t i = 1; i < coeffs_.size(); i += 2)
    if (std::abs(coeffs_[i]) > scale) return false;
  return true;
}

bool Polynomial::is_odd(double tol) const {
  const double scale = tol * (1.0 + coeff_norm());
  for (std::size_t i = 0; i < coeffs_.size(); i += 2)
    if (std::abs(coeffs_[i]) > scale) return false;
  return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c = p.coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial operator+(double c, const Polynomial& p) { return Polynomial::constant(c) + p; }
Polynomial operator-(double c, const Polynomial& p) { return Polynomial::constant(c) - p; }

std::string Polynomial::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  if (coeffs_.empty()) os << 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
  os << ']';
  return os.str();
}

double eval(const Polynomial& F, double x) { return F(x); }
double eval_deriv(const Polynomial& F, double x, int order) { return F.eval_deriv(x, order); }

double root_bound(const Polynomial& F) {
  if (F.degree() == 0) return 0.0;
  const double lead = std::abs(F[F.degree()]);
  double m = 0.0;
  for (int i = 0; i < F.degree(); ++i) m = std::max(m, std::abs(F[i]) / lead);
  return 1.0 + m;
}

double root_residual_tolerance(const Polynomial& F, double x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return std::max(1e-12 * (1.0 + F.coeff_norm()), 8.0 * eps * F.abs_eval_bound(x));
}

bool is_numerical_root(const Polynomial& F, double x) {
  return std::abs(F(x)) <= root_residual_tolerance(F, x);
}

int vanishing_order(const Polynomial& F, double x, double rel_tol) {
  if (F.is_zero()) return F.degree() + 1;
  if (!is_numerical_root(F, x)) return 0;
  int order = 1;
  for (; order <= F.degree(); ++order) {
    const Polynomial d = F.derivative(order);
    if (std::abs(d(x)) > rel_tol * (1.0 + d.coeff_norm())) break;
  }
  return order;
}

double sup_norm_on(const Polynomial& F, Interval window) {
  double m = std::max(std::abs(F(window.lo)), std::abs(F(window.hi)));
  const Polynomial d = F.derivative();
  if (d.degree() >= 1) {
    for (const Root& r : real_roots(d, window)) m = std::max(m, std::abs(F(r.x)));
  }
  return m;
}

std::string to_string(EndpointKind kind) { return kind == EndpointKind::Regular ? "Regular" : "Critical"; }

bool is_critical_point(const Polynomial& F, double x) {
  const Polynomial d = F.derivative();
  return std::abs(d(x)) <= 1e-9 * (1.0 + d.coeff_norm());
}

UnitaryForm normalize_to_unitary(const Polynomial& F, const HillInterval& I) {
  const double u = I.hi - I.lo;
  if (!(u > 0.0) || I.clipped) throw Error(ErrorCode::DegenerateHill, "hill interval must be compact with positive length");
  UnitaryForm out;
  out.h = AffineMap{I.lo, u};
  out.F_hat = F.compose_affine(I.lo, u);
  out.unit_hill = I;
  out.unit_hill.lo = 0.0;
  out.unit_hill.hi = 1.0;
  return out;
}

Polynomial DirectTypeFactorization::bump() const {
  Polynomial one_minus_x{1.0, -1.0};
  Polynomial acc = Polynomial::monomial(k1) * q;
  for (int i = 0; i < k2; ++i) acc = acc * one_minus_x;
  return acc;
}

Polynomial DirectTypeFactorization::reconstruct() const { return 1.0 - bump(); }

DirectTypeFactorization direct_type_factorize(const Polynomial& F) {
  auto fail = [](const std::string& why) { return Error(ErrorCode::NotDirectType, why); };
  if (F.is_constant()) throw fail("constant polynomial");
  if (std::abs(F(0.0) - 1.0) > 1e-9 || std::abs(F(1.0) - 1.0) > 1e-9) throw fail("F(0) and F(1) must equal 1");
  if (!is_critical_point(F, 0.0) || !is_critical_point(F, 1.0)) throw fail("0 and 1 must be critical points");
  constexpr int samples = 2000;
  for (int i = 1; i < samples; ++i) {
    const double x = static_cast<double>(i) / samples;
    if (!(std::abs(F(x)) < 1.0)) throw fail("|F| must stay below 1 on (0,1)");
  }

  const Polynomial P = 1.0 - F;
  DirectTypeFactorization out;
  out.k1 = vanishing_order(P, 0.0);
  out.k2 = vanishing_order(P, 1.0);
  if (out.k1 < 2 || out.k2 < 2) throw fail("vanishing orders at 0 and 1 must exceed 1");

  // Deflate x^k1, then (1 - x)^k2 by synthetic division.
  std::vector<double> c(P.coeffs().begin(), P.coeffs().end());
  c.erase(c.begin(), c.begin() + std::min<std::ptrdiff_t>(out.k1, static_cast<std::ptrdiff_t>(c.size())));
  for (int r = 0; r < out.k2; ++r) {
    if (c.empty()) break;
    // c(x) = (x - 1) d(x) + rem
    std::vector<double> d(c.size() - 1, 0.0);
    double carry = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = c[i] + carry;
      d[i - 1] = carry;
    }
    for (double& v : d) v = -v;  // divide by (1 - x) = -(x - 1)
    c = std::move(d);
  }
  out.q = Polynomial(std::move(c));

  const Polynomial bump = out.bump();
  out.q_max = 0.0;
  for (double x : {0.0, 1.0}) out.q_max = std::max(out.q_max, bump(x));
  for (const Root& r : real_roots(bump.derivative(), {0.0, 1.0})) out.q_max = std::max(out.q_max, bump(r.x));
  return out;
}

MarkovCheck markov_bound_check(const Polynomial& F) {
  MarkovCheck m;
  const Interval unit{0.0, 1.0};
  if (F.is_zero()) return m;
  m.sup_norm = sup_norm_on(F, unit);
  const Polynomial d = F.derivative();
  m.deriv_sup = d.is_zero() ? 0.0 : sup_norm_on(d, unit);
  const double k = static_cast<double>(F.degree());
  m.bound = 2.0 * k * k * m.sup_norm;
  m.printed_bound = k * k * m.sup_norm;
  // Rounding slack only; extremal polynomials attain the bound with equality.
  constexpr double slack = 1e-12;
  m.ok = m.deriv_sup <= m.bound * (1.0 + slack);
  m.printed_ok = m.deriv_sup <= m.printed_bound * (1.0 + slack);
  return m;
}

}  // namespace jetgeo
