#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bbs/pmf.hpp"

namespace bbs {

enum class StreamRole : std::uint64_t { Window = 1, Currents = 2, Aux = 3 };

struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replica_index = 0;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Independent, reproducible stream keyed by (master_seed, replica, role, salt).
class Stream {
 public:
  Stream(RngSpec spec, StreamRole role, std::uint64_t salt = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Inverse-CDF sampler over the pmf's finite support.
class Sampler {
 public:
  explicit Sampler(const Pmf& pmf);
  std::int64_t operator()(Stream& s) const;

 private:
  std::vector<double> cdf_;
};

std::uint64_t entropy_seed();

}  // namespace bbs
