#include "bbs/block_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bbs/error.hpp"

namespace bbs {

BlockPaths block_paths(const std::filesystem::path& occupancy_csv) {
  const auto dir = occupancy_csv.parent_path();
  const auto stem = occupancy_csv.stem().string();
  const auto ext = occupancy_csv.has_extension() ? occupancy_csv.extension().string() : std::string(".csv");
  return {occupancy_csv, dir / (stem + "_carrier" + ext), dir / (stem + "_currents" + ext)};
}

namespace {

void write_header(std::ostream& os, std::int64_t first, std::size_t width) {
  os << 't';
  for (std::size_t i = 0; i < width; ++i) os << ',' << first + static_cast<std::int64_t>(i);
  os << '\n';
}

void write_rows(std::ostream& os, const std::vector<std::vector<std::int64_t>>& rows) {
  for (std::size_t t = 0; t < rows.size(); ++t) {
    os << t;
    for (auto v : rows[t]) os << ',' << v;
    os << '\n';
  }
}

std::vector<std::int64_t> split_ints(const std::string& line, const std::filesystem::path& path) {
  std::vector<std::int64_t> out;
  std::string_view rest(line);
  if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
  while (true) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(item) + "' in " + path.string());
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

struct Table {
  std::vector<std::int64_t> header;
  std::vector<std::vector<std::int64_t>> rows;
};

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0) {
    throw Error(ErrorCode::ParseError, "missing t,... header in " + path.string());
  }
  Table tab;
  tab.header = split_ints(line.substr(2), path);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto v = split_ints(line, path);
    if (v.size() != tab.header.size() + 1 || v[0] != static_cast<std::int64_t>(tab.rows.size())) {
      throw Error(ErrorCode::ParseError, "ragged or misnumbered row in " + path.string());
    }
    v.erase(v.begin());
    tab.rows.push_back(std::move(v));
  }
  return tab;
}

}  // namespace

void write_occupancy_csv(std::ostream& os, const SpaceTimeBlock& b) {
  write_header(os, b.offset, b.width());
  write_rows(os, b.occupancy);
}

void write_carrier_csv(std::ostream& os, const SpaceTimeBlock& b) {
  write_header(os, b.offset, b.width());
  write_rows(os, b.carrier);
}

void write_currents_csv(std::ostream& os, const SpaceTimeBlock& b) {
  os << "t," << b.offset - 1 << '\n';
  for (std::size_t t = 0; t < b.left_currents.size(); ++t) os << t << ',' << b.left_currents[t] << '\n';
}

void write_block_csv(const SpaceTimeBlock& b, const std::filesystem::path& occupancy_csv) {
  const BlockPaths p = block_paths(occupancy_csv);
  if (occupancy_csv.has_parent_path()) std::filesystem::create_directories(occupancy_csv.parent_path());
  auto open = [](const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    return os;
  };
  auto occ = open(p.occupancy);
  write_occupancy_csv(occ, b);
  auto car = open(p.carrier);
  write_carrier_csv(car, b);
  auto cur = open(p.currents);
  write_currents_csv(cur, b);
}

SpaceTimeBlock read_block_csv(const std::filesystem::path& occupancy_csv, Capacity J, Capacity K) {
  const BlockPaths p = block_paths(occupancy_csv);
  Table occ = read_table(p.occupancy);
  Table car = read_table(p.carrier);
  Table cur = read_table(p.currents);
  if (occ.header.empty()) throw Error(ErrorCode::ParseError, "empty occupancy header");
  for (std::size_t i = 0; i < occ.header.size(); ++i) {
    if (occ.header[i] != occ.header[0] + static_cast<std::int64_t>(i)) {
      throw Error(ErrorCode::ParseError, "occupancy header is not consecutive sites");
    }
  }
  if (car.header != occ.header) throw Error(ErrorCode::ParseError, "carrier header differs from occupancy");
  if (cur.header.size() != 1 || cur.header[0] != occ.header[0] - 1) {
    throw Error(ErrorCode::ParseError, "currents header must name the site left of the window");
  }
  if (occ.rows.size() != car.rows.size() + 1 || cur.rows.size() != car.rows.size()) {
    throw Error(ErrorCode::ParseError, "row counts do not line up");
  }
  SpaceTimeBlock b{J, K, occ.header[0], std::move(occ.rows), std::move(car.rows), {}};
  for (const auto& r : cur.rows) b.left_currents.push_back(r[0]);
  return b;
}

}  // namespace bbs
