#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace bubblekit {

// Thrown when an argument violates an operation's precondition.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a configuration document cannot be ingested.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numerical routine fails to reach its contract.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic cross-platform PRNG (splitmix64 core). All sampling in the
// library goes through this so that identical seeds give identical runs on
// any platform, independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller (pinned formula, no libc distributions)
  double gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Runs fn(i) for i in [begin,end). Worker count is bounded by the
// BUBBLEKIT_THREADS environment variable (default: hardware parallelism).
// Results must be written to per-index slots so the merge is deterministic.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

int worker_count();

// Shortest-round-trip formatting for CSV output (17 significant digits).
std::string format_double(double v);

}  // namespace bubblekit
