#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "bbs/evolution.hpp"

namespace bbs {

struct BlockPaths {
  std::filesystem::path occupancy;
  std::filesystem::path carrier;
  std::filesystem::path currents;
};

// block.csv -> block.csv, block_carrier.csv, block_currents.csv
BlockPaths block_paths(const std::filesystem::path& occupancy_csv);

void write_occupancy_csv(std::ostream& os, const SpaceTimeBlock& b);
void write_carrier_csv(std::ostream& os, const SpaceTimeBlock& b);
void write_currents_csv(std::ostream& os, const SpaceTimeBlock& b);

void write_block_csv(const SpaceTimeBlock& b, const std::filesystem::path& occupancy_csv);
// Throws ParseError on malformed files.
SpaceTimeBlock read_block_csv(const std::filesystem::path& occupancy_csv, Capacity J, Capacity K);

}  // namespace bbs
