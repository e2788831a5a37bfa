// Copyright 2026 The qcvv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qcvv {

/// Input failed a precondition or an artifact failed schema validation.
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or produced an inconsistent
/// result. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Absolute tolerance used by all invariant checks unless the caller
/// overrides it (e.g. when ingesting noisy external models).
inline constexpr double kDefaultTol = 1e-9;

namespace detail {
template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream ss;
  ss.precision(12);
  (ss << ... << parts);
  return ss.str();
}
}  // namespace detail

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable 64-bit mix of (master seed, stream index). Used to hand every
/// circuit / restart / setting its own reproducible random stream, so
/// results do not depend on execution order or parallelism.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64(splitmix64(master) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Seeded random stream with explicitly specified distributions.
///
/// std::mt19937_64 output is pinned by the standard, but the standard
/// distribution adaptors are not; the conversions here are written out so
/// identical seeds give identical draws on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), rejection-sampled.
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) throw ValidationError("uniform_int: n must be positive");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Worker count for parallel sections: hardware concurrency, capped by the
/// QCVV_THREADS environment variable when set.
int worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; each item
/// writes only its own output slot, so results are deterministic under any
/// schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qcvv
