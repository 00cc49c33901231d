#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "rbfreg/format.hpp"
#include "rbfreg/registration.hpp"

namespace rbfreg {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

LandmarkPairs parse_landmarks(std::string_view text) {
  LandmarkPairs pairs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#') {
      if (eol == text.size()) break;
      continue;
    }

    std::array<double, 4> values{};
    std::size_t count = 0;
    while (i < line.size()) {
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      const std::string_view token = line.substr(i, j - i);
      if (count == values.size()) {
        throw Error(ErrorKind::Validation,
                    "landmark line " + std::to_string(line_no) + ": expected 4 values");
      }
      // from_chars rejects a leading '+', which plain decimal files may carry.
      const std::string_view digits = (!token.empty() && token.front() == '+') ? token.substr(1) : token;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw Error(ErrorKind::Validation, "landmark line " + std::to_string(line_no) +
                                               ": cannot parse '" + std::string(token) + "'");
      }
      values[count++] = v;
      i = j;
      while (i < line.size() && is_space(line[i])) ++i;
    }
    if (count != values.size()) {
      throw Error(ErrorKind::Validation,
                  "landmark line " + std::to_string(line_no) + ": expected 4 values");
    }
    pairs.source.emplace_back(values[0], values[1]);
    pairs.target.emplace_back(values[2], values[3]);
    if (eol == text.size()) break;
  }
  return pairs;
}

LandmarkPairs read_landmarks(const std::filesystem::path& path) {
  return parse_landmarks(read_file(path));
}

std::string format_landmarks(const LandmarkPairs& pairs) {
  std::ostringstream out;
  out << "# sx sy tx ty\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out << format_sig(pairs.source[i].x()) << ' ' << format_sig(pairs.source[i].y()) << ' '
        << format_sig(pairs.target[i].x()) << ' ' << format_sig(pairs.target[i].y()) << '\n';
  }
  return out.str();
}

}  // namespace rbfreg
