#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "inatt/errors.hpp"
#include "inatt/model.hpp"

namespace inatt {

enum class Spacing { Linear, Geometric };

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw DomainError("grid must have at least one point");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

inline std::vector<double> geomspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo)) throw DomainError("geometric grid needs 0 < lo <= hi");
  auto logs = linspace(std::log(lo), std::log(hi), count);
  for (auto& v : logs) v = std::exp(v);
  logs.front() = lo;
  logs.back() = hi;
  return logs;
}

/// Reward grid on [lo, hi]. Geometric spacing is taken in x - lo, with the
/// first point at lo itself and the rest spread over [ (hi-lo)*1e-3, hi-lo ].
inline std::vector<double> reward_grid(double lo, double hi, std::size_t count, Spacing spacing) {
  if (!(hi >= lo)) throw DomainError("reward grid needs max >= min");
  if (spacing == Spacing::Linear || count < 2 || hi == lo) return linspace(lo, hi, count);
  const double span = hi - lo;
  std::vector<double> out{lo};
  for (double d : geomspace(span * 1e-3, span, count - 1)) out.push_back(lo + d);
  return out;
}

/// Rewards at x0 followed by count-1 points whose utilities u1(x) are
/// geometrically spaced on [u_lo, u_hi]. Both the low-reward region where
/// acquisition switches on and the high-reward corner are sampled.
inline std::vector<double> utility_grid(const Agent& agent, double u_lo, double u_hi, std::size_t count) {
  if (count == 0) throw DomainError("reward grid must have at least one point");
  std::vector<double> out{agent.x0()};
  if (count == 1) return out;
  u_lo = std::max(u_lo, agent.w());
  if (u_lo <= 0.0) u_lo = u_hi * 1e-4;
  u_hi = std::max(u_hi, u_lo);
  for (double u : geomspace(u_lo, u_hi, count - 1)) out.push_back(agent.reward_for_utility(u));
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once, so results written by index are independent of the
/// thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace inatt
