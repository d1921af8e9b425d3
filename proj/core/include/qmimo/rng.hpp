#pragma once

// Deterministic random streams. All Monte Carlo in this library draws from
// splitmix64 streams with explicit 64-bit seeds and generates normals with
// its own Box-Muller so results are bit-identical across platforms and
// standard libraries. Parallel reductions split work into fixed-size chunks
// with per-chunk derived seeds and a fixed combine order, so results are
// independent of the worker count.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string_view>
#include <thread>
#include <vector>

namespace qmimo {

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and a stream index.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  splitmix64_next(s);
  uint64_t r = splitmix64_next(s);
  return r;
}

inline uint64_t hash_tag(std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64_next(state_); }

  // uniform in [0, 1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in (0, 1]
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal via Box-Muller (pairs cached)
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_double_open();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // uniform integer in [0, n)
  uint64_t next_below(uint64_t n) {
    // multiply-shift; bias negligible for n << 2^64 and irrelevant here
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<uint64_t>(m >> 64);
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Worker count for parallel Monte Carlo; settable programmatically or via the
// QMIMO_WORKERS environment variable. Never affects results, only wall time.
int worker_count();
void set_worker_count(int n);  // n <= 0 restores the default

inline constexpr uint64_t kMcChunk = 65536;

// Runs `body(rng, count, accum)` over ceil(n/kMcChunk) chunks, each with its
// own derived seed, then combines chunk accumulators in index order.
// Accum needs: default construction and member combine(const Accum&).
template <class Accum, class Body>
Accum mc_run(uint64_t seed, uint64_t n_samples, Body&& body) {
  uint64_t n_chunks = (n_samples + kMcChunk - 1) / kMcChunk;
  if (n_chunks == 0) return Accum{};
  std::vector<Accum> partial(n_chunks);
  auto run_chunk = [&](uint64_t c) {
    uint64_t count = (c + 1 == n_chunks) ? n_samples - c * kMcChunk : kMcChunk;
    Rng rng(derive_seed(seed, c));
    body(rng, count, partial[c]);
  };
  int workers = worker_count();
  if (workers <= 1 || n_chunks == 1) {
    for (uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    uint64_t w = std::min<uint64_t>(workers, n_chunks);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (uint64_t t = 0; t < w; ++t) {
      pool.emplace_back([&, t] {
        for (uint64_t c = t; c < n_chunks; c += w) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  Accum total = std::move(partial[0]);
  for (uint64_t c = 1; c < n_chunks; ++c) total.combine(partial[c]);
  return total;
}

// Mean/variance accumulator with a fixed summation order.
struct MeanAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
  uint64_t n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  void combine(const MeanAccum& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  double mean() const { return n ? sum / n : 0.0; }
  double std_err() const {
    if (n < 2) return 0.0;
    double var = (sum_sq - sum * sum / n) / (n - 1);
    return std::sqrt(std::max(var, 0.0) / n);
  }
};

}  // namespace qmimo
