// lbfgs.hpp
// Limited-memory quasi-Newton minimizer with backtracking line search.
// When an L1 coefficient is given the orthant-wise variant (OWL-QN) is
// used: the pseudo-gradient replaces the gradient, the search direction is
// constrained to its descent orthant, and trial points are projected back
// onto the orthant chosen at the start of the line search, so coordinates
// reach exactly zero.
//
// The callable minimized here evaluates only the smooth part; this file
// adds c1 * ||x||_1 itself. Stops when the relative objective change drops
// below `tolerance` or after `max_iterations` accepted steps. The
// regularized objective is non-increasing across accepted iterations.

#ifndef CMX_LBFGS_HPP_
#define CMX_LBFGS_HPP_

#include <cmath>
#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "cmx/error.hpp"

namespace cmx {

struct LbfgsOptions {
  double c1 = 0.0;          // L1 coefficient (0 = plain L-BFGS)
  int max_iterations = 200;
  double tolerance = 1e-5;  // relative objective change
  int history = 6;
  int max_linesearch = 50;
};

struct LbfgsResult {
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

inline double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

// Pseudo-gradient of f(x) + c1*||x||_1: the L1 subgradient choice that
// gives the steepest descent direction; zero where no descent is possible.
inline void pseudo_gradient(std::span<const double> x, std::span<const double> grad,
                            double c1, std::span<double> pg) {
  if (c1 == 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) pg[i] = grad[i];
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      pg[i] = grad[i] + c1;
    } else if (x[i] < 0.0) {
      pg[i] = grad[i] - c1;
    } else if (grad[i] + c1 < 0.0) {
      pg[i] = grad[i] + c1;
    } else if (grad[i] - c1 > 0.0) {
      pg[i] = grad[i] - c1;
    } else {
      pg[i] = 0.0;
    }
  }
}

}  // namespace detail

// smooth(x, grad) must return the smooth objective value and fill grad.
template <typename SmoothFn>
LbfgsResult lbfgs_minimize(std::vector<double>& x, SmoothFn&& smooth,
                           const LbfgsOptions& options) {
  if (options.max_iterations < 1) throw Error("max_iterations must be >= 1");
  if (options.tolerance <= 0.0) throw Error("tolerance must be positive");
  if (options.c1 < 0.0) throw Error("c1 must be non-negative");

  const std::size_t n = x.size();
  const double c1 = options.c1;
  const bool owlqn = c1 > 0.0;

  std::vector<double> grad(n), pg(n), direction(n);
  std::vector<double> prev_x(n), prev_grad(n);
  std::vector<double> orthant(owlqn ? n : 0);

  struct Correction {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Correction> history;

  double fx = smooth(std::span<const double>(x), std::span<double>(grad));
  if (owlqn) fx += c1 * detail::l1_norm(x);
  detail::pseudo_gradient(x, grad, c1, pg);

  LbfgsResult result{fx, 0, false};
  if (detail::l2_norm(pg) == 0.0) {
    result.converged = true;
    return result;
  }

  for (std::size_t i = 0; i < n; ++i) direction[i] = -pg[i];
  double step = 1.0 / detail::l2_norm(direction);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    prev_x = x;
    prev_grad = grad;
    const double prev_fx = fx;

    if (owlqn) {
      // Orthant fixed for the whole line search.
      for (std::size_t i = 0; i < n; ++i) {
        orthant[i] = x[i] != 0.0 ? (x[i] > 0.0 ? 1.0 : -1.0)
                                 : (pg[i] > 0.0 ? -1.0 : (pg[i] < 0.0 ? 1.0 : 0.0));
      }
    }

    // Backtracking Armijo search on the regularized objective, measured
    // against the pseudo-gradient and the actual (projected) displacement.
    bool accepted = false;
    for (int ls = 0; ls < options.max_linesearch; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x[i] = prev_x[i] + step * direction[i];
      if (owlqn) {
        for (std::size_t i = 0; i < n; ++i) {
          if (x[i] * orthant[i] <= 0.0) x[i] = 0.0;
        }
      }
      fx = smooth(std::span<const double>(x), std::span<double>(grad));
      if (owlqn) fx += c1 * detail::l1_norm(x);

      double dg = 0.0;
      for (std::size_t i = 0; i < n; ++i) dg += pg[i] * (x[i] - prev_x[i]);
      if (dg < 0.0 && fx <= prev_fx + 1e-4 * dg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No admissible step; restore the last accepted point and stop.
      x = prev_x;
      grad = prev_grad;
      fx = prev_fx;
      break;
    }
    result.iterations = iter;
    result.objective = fx;

    const double change = std::fabs(prev_fx - fx);
    const double scale = std::max({std::fabs(prev_fx), std::fabs(fx), 1.0});
    if (change <= options.tolerance * scale) {
      result.converged = true;
      break;
    }

    // Curvature update; skip the pair when s.y is not safely positive.
    Correction corr;
    corr.s.resize(n);
    corr.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      corr.s[i] = x[i] - prev_x[i];
      corr.y[i] = grad[i] - prev_grad[i];
    }
    const double sy = detail::dot(corr.s, corr.y);
    const double ss = detail::dot(corr.s, corr.s);
    if (sy > 1e-10 * std::sqrt(ss) * detail::l2_norm(corr.y)) {
      corr.rho = 1.0 / sy;
      history.push_back(std::move(corr));
      if (static_cast<int>(history.size()) > options.history) history.pop_front();
    }

    detail::pseudo_gradient(x, grad, c1, pg);
    if (detail::l2_norm(pg) == 0.0) {
      result.converged = true;
      break;
    }

    // Two-loop recursion for d = -H * pg.
    for (std::size_t i = 0; i < n; ++i) direction[i] = -pg[i];
    std::vector<double> alphas(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
      const Correction& c = history[k];
      alphas[k] = c.rho * detail::dot(c.s, direction);
      for (std::size_t i = 0; i < n; ++i) direction[i] -= alphas[k] * c.y[i];
    }
    if (!history.empty()) {
      const Correction& last = history.back();
      const double gamma = detail::dot(last.s, last.y) / detail::dot(last.y, last.y);
      for (std::size_t i = 0; i < n; ++i) direction[i] *= gamma;
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      const Correction& c = history[k];
      const double b = c.rho * detail::dot(c.y, direction);
      for (std::size_t i = 0; i < n; ++i) direction[i] += (alphas[k] - b) * c.s[i];
    }
    if (owlqn) {
      // Constrain the direction to the descent orthant of the
      // pseudo-gradient.
      for (std::size_t i = 0; i < n; ++i) {
        if (direction[i] * pg[i] >= 0.0) direction[i] = 0.0;
      }
    }
    if (detail::dot(pg, direction) >= 0.0) {
      // Not a descent direction; fall back to steepest descent.
      history.clear();
      for (std::size_t i = 0; i < n; ++i) direction[i] = -pg[i];
      step = 1.0 / detail::l2_norm(direction);
    } else {
      step = 1.0;
    }
  }

  result.objective = fx;
  return result;
}

}  // namespace cmx

#endif  // CMX_LBFGS_HPP_
