#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace ctop::csv {

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

/// Version header written as the first line of every CSV the tool emits,
/// e.g. "# ctop-rates rate-plan v1". Readers require the matching tag.
inline std::string version_header(const std::string& kind) {
  return "# ctop-rates " + kind + " v1";
}

inline bool is_version_header(const std::string& line, const std::string& kind) {
  return line == version_header(kind);
}

}  // namespace ctop::csv
