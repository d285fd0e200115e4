#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbs/evolution.hpp"
#include "bbs/experiments.hpp"
#include "bbs/measures.hpp"

namespace bbs {

// JSON-lines records. Probabilities carry 17 significant digits.
std::vector<std::string> speed_records(const SpeedEstimate& est, Capacity J, Capacity K, std::uint64_t seed);
std::vector<std::string> invariance_records(const InvarianceReport& rep, Capacity J, Capacity K, std::uint64_t seed);
std::string current_iid_record(const CurrentIidReport& rep, std::uint64_t seed);
std::string classify_record(const ClassifyResult& res, Capacity J, Capacity K);
std::string duality_record(const DualityReport& rep);

}  // namespace bbs
