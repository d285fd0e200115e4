#include "bbs/rng.hpp"

#include <algorithm>

namespace bbs {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Stream::Stream(RngSpec spec, StreamRole role, std::uint64_t salt) {
  std::uint64_t state = spec.master_seed;
  std::uint64_t key = splitmix64(state);
  state = key ^ (spec.replica_index * 0xd1b54a32d192ed03ULL);
  key = splitmix64(state);
  state = key ^ (static_cast<std::uint64_t>(role) * 0x8cb92ba72f3d8dd7ULL);
  key = splitmix64(state);
  state = key ^ salt;
  std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
  engine_.seed(seq);
}

Sampler::Sampler(const Pmf& pmf) {
  const double total = pmf.total();
  double acc = 0.0;
  cdf_.reserve(pmf.size());
  for (double w : pmf.weights()) {
    acc += w / total;
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;
}

std::int64_t Sampler::operator()(Stream& s) const {
  const double u = s.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::int64_t>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1));
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace bbs
