#ifndef DT4_PARTITIONS_JSONL_HPP
#define DT4_PARTITIONS_JSONL_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dt4/errors.hpp"
#include "dt4/partitions/solid_partition.hpp"

namespace dt4 {

/// One record per line: {"n": 2, "boxes": [[0,0,0,0],[1,0,0,0]]}.
inline void write_partitions_jsonl(std::ostream& out, const std::vector<SolidPartition>& partitions) {
  for (const auto& p : partitions) {
    nlohmann::json rec;
    rec["n"] = p.size();
    rec["boxes"] = nlohmann::json::array();
    for (const auto& b : p.boxes()) rec["boxes"].push_back(b);
    out << rec.dump() << '\n';
  }
}

/// Reads records written by write_partitions_jsonl, validating closure and n.
inline std::vector<SolidPartition> read_partitions_jsonl(std::istream& in) {
  std::vector<SolidPartition> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
      auto boxes = rec.at("boxes").get<std::vector<Box>>();
      SolidPartition p(std::move(boxes));
      if (rec.at("n").get<std::size_t>() != p.size()) throw InvalidPartition("record n disagrees with box count");
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidPartition(std::string("malformed partition record: ") + e.what());
    }
  }
  return out;
}

}  // namespace dt4

#endif  // DT4_PARTITIONS_JSONL_HPP
