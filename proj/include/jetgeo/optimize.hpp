#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace jetgeo {

template <std::size_t N>
using Vec = std::array<double, N>;

struct NelderMeadOptions {
  double diameter_tol = 1e-10;
  std::size_t max_evals = 3000;
};

template <std::size_t N>
struct NelderMeadResult {
  Vec<N> x{};
  double fx = 0.0;
  std::size_t evals = 0;
  bool converged = false;  // simplex diameter below tolerance
};

/// Downhill simplex. The recorded best value never increases, and it strictly
/// decreases whenever the best vertex is replaced.
template <std::size_t N>
NelderMeadResult<N> nelder_mead(const std::function<double(const Vec<N>&)>& f, const Vec<N>& x0,
                                const Vec<N>& step, const NelderMeadOptions& opt = {});

/// Gauss-Newton on a square residual system with central-difference Jacobian.
/// Steps are only taken when they reduce |r|; returns the final point.
template <std::size_t N>
Vec<N> gauss_newton_polish(const std::function<Vec<N>(const Vec<N>&)>& r, Vec<N> x, int iterations = 8);

double norm(const Vec<3>& v);

}  // namespace jetgeo
