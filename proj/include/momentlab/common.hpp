// Shared infrastructure: counter-based RNG, deterministic reductions,
// block-partitioned worker pool.
#ifndef MOMENTLAB_COMMON_HPP
#define MOMENTLAB_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace momentlab {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Counter-based RNG. Every draw is a pure function of (experiment id, seed,
// sample index, substream), so partitioning work across any number of
// threads yields the same numbers.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class CounterRng {
 public:
  CounterRng(std::string_view experiment_id, std::uint64_t seed)
      : key_(splitmix64(fnv1a(experiment_id) ^ splitmix64(seed))) {}

  // 64 random bits for (sample index, substream).
  std::uint64_t bits(std::uint64_t index, std::uint64_t sub = 0) const {
    std::uint64_t x = key_ ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + sub);
    return splitmix64(splitmix64(x));
  }

  // Uniform in [0, 1).
  double uniform(std::uint64_t index, std::uint64_t sub = 0) const {
    return static_cast<double>(bits(index, sub) >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(std::uint64_t index, std::uint64_t sub, double lo,
                 double hi) const {
    return lo + (hi - lo) * uniform(index, sub);
  }

  // Standard normal (Box-Muller; uses substreams 2*sub, 2*sub+1).
  double normal(std::uint64_t index, std::uint64_t sub = 0) const {
    double u1 = uniform(index, 2 * sub + 1000);
    double u2 = uniform(index, 2 * sub + 1001);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Uniform point in the unit ball of dimension m (rejection-free:
  // normal direction + radius transform). Substreams [sub, sub+m].
  std::vector<double> unit_ball(std::uint64_t index, int m,
                                std::uint64_t sub = 0) const {
    std::vector<double> v(m);
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = normal(index, sub + 1 + i);
      norm2 += v[i] * v[i];
    }
    double norm = std::sqrt(norm2);
    if (norm < 1e-300) norm = 1e-300;
    double radius = std::pow(uniform(index, sub), 1.0 / m);
    for (auto& c : v) c *= radius / norm;
    return v;
  }

 private:
  std::uint64_t key_;
};

// ---------------------------------------------------------------------------
// Deterministic summation: pairwise reduction in index order.
// ---------------------------------------------------------------------------

inline double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

// ---------------------------------------------------------------------------
// Worker pool. Work is split into fixed blocks independent of the worker
// count; block results are combined in index order, so the outcome is
// bit-identical for any number of workers.
// ---------------------------------------------------------------------------

inline int& worker_count() {
  static int n = 1;
  return n;
}

// fn(block_index) for block_index in [0, n_blocks).
inline void parallel_blocks(std::size_t n_blocks,
                            const std::function<void(std::size_t)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t per = (n_blocks + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = w * per, hi = std::min(n_blocks, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t b = lo; b < hi; ++b) fn(b);
    });
  }
  for (auto& t : pool) t.join();
}

// Sum of term(i) for i in [0, n), blocked and pairwise-combined.
inline double parallel_sum(std::size_t n,
                           const std::function<double(std::size_t)>& term,
                           std::size_t block = 1 << 14) {
  std::size_t n_blocks = (n + block - 1) / block;
  std::vector<double> partial(n_blocks, 0.0);
  parallel_blocks(n_blocks, [&](std::size_t b) {
    std::size_t lo = b * block, hi = std::min(n, lo + block);
    std::vector<double> buf;
    buf.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) buf.push_back(term(i));
    partial[b] = pairwise_sum(buf);
  });
  return pairwise_sum(partial);
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidConfiguration : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace momentlab

#endif  // MOMENTLAB_COMMON_HPP
