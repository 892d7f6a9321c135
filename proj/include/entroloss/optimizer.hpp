#pragma once

#include "entroloss/error.hpp"
#include "entroloss/random.hpp"
#include "entroloss/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace entroloss {

struct OptimizerBudget {
  int restarts = 16;
  int iterations = 2000;
  std::uint64_t seed = 0;
  double initial_step = 0.5;
  double grow = 1.5;
  double shrink = 0.7;
  double min_step = 1e-9;
  /// Two restarts within this distance of the best value count as agreement.
  double gap_tolerance = 1e-5;
};

enum class Direction { lower_bound, upper_bound };

inline const char* to_string(Direction d) { return d == Direction::lower_bound ? "LOWER_BOUND" : "UPPER_BOUND"; }

/// Optimizer estimate with one-sided semantics.
struct BoundedValue {
  double value = 0.0;
  Direction direction = Direction::upper_bound;
  bool converged = false;
  double gap_estimate = 0.0;
  bool exhausted = false;
  /// True when the value is exact (closed form or certified ensemble) and no search ran.
  bool exact = false;

  static BoundedValue certified(double v, Direction d) { return {v, d, true, 0.0, false, true}; }
};

/// Worker count: ENTROLOSS_THREADS when set, else hardware concurrency.
inline unsigned worker_threads() {
  if (const char* env = std::getenv("ENTROLOSS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on up to worker_threads() threads; exceptions are rethrown in index order.
template <class Body>
void parallel_for(int n, Body&& body) {
  const unsigned workers = std::min<unsigned>(worker_threads(), static_cast<unsigned>(std::max(n, 1)));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
  auto run = [&](unsigned w) {
    for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Orthonormal-column factor of the QR decomposition with positive diagonal in R.
inline Matrix qr_retract(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const cplx d = qr.matrixQR()(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

struct IsometrySearchResult {
  double value = 0.0;
  Matrix argument;
  bool converged = false;
  double gap_estimate = 0.0;
  bool exhausted = false;
  std::vector<double> restart_values;
};

/// Minimizes f over isometries of shape rows x cols by multi-restart (1+1) random-direction search.
/// Restart 0 starts from `start` when given; other restarts start from Haar-random isometries.
inline IsometrySearchResult minimize_over_isometries(const std::function<double(const Matrix&)>& f,
                                                     Eigen::Index rows, Eigen::Index cols,
                                                     const OptimizerBudget& budget,
                                                     const std::optional<Matrix>& start = std::nullopt) {
  require(rows >= cols && cols >= 1, ErrorKind::DimensionMismatch, "isometry needs rows >= cols >= 1");
  require(budget.restarts >= 1 && budget.iterations >= 0, ErrorKind::ConfigError, "optimizer budget must be positive");
  const int n = budget.restarts;
  std::vector<double> best(static_cast<size_t>(n));
  std::vector<Matrix> arg(static_cast<size_t>(n));
  std::vector<char> ran_out(static_cast<size_t>(n), 0);

  parallel_for(n, [&](int r) {
    std::seed_seq seq{static_cast<std::uint32_t>(budget.seed), static_cast<std::uint32_t>(budget.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 eng(seq);
    Rng rng(eng());
    Matrix w = (r == 0 && start) ? qr_retract(*start) : rng.haar_isometry(rows, cols);
    double fw = f(w);
    double step = budget.initial_step;
    int it = 0;
    for (; it < budget.iterations && step >= budget.min_step; ++it) {
      Matrix d = rng.ginibre(rows, cols);
      d /= d.norm();
      bool moved = false;
      for (double sign : {1.0, -1.0}) {
        const Matrix trial = qr_retract(w + sign * step * d);
        const double ft = f(trial);
        if (ft < fw) {
          w = trial;
          fw = ft;
          moved = true;
          break;
        }
      }
      step *= moved ? budget.grow : budget.shrink;
    }
    best[static_cast<size_t>(r)] = fw;
    arg[static_cast<size_t>(r)] = std::move(w);
    ran_out[static_cast<size_t>(r)] = step >= budget.min_step ? 1 : 0;
  });

  IsometrySearchResult out;
  out.restart_values = best;
  size_t ib = 0;
  for (size_t i = 1; i < best.size(); ++i)
    if (best[i] < best[ib]) ib = i;
  out.value = best[ib];
  out.argument = arg[ib];
  out.exhausted = ran_out[ib] != 0;
  int agree = 0;
  double second = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < best.size(); ++i) {
    if (best[i] - out.value <= budget.gap_tolerance) ++agree;
    if (i != ib) second = std::min(second, best[i]);
  }
  out.converged = agree >= 2;
  out.gap_estimate = std::isfinite(second) ? second - out.value : 0.0;
  return out;
}

}  // namespace entroloss
