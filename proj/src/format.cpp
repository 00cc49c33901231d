#include "rbfreg/format.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "rbfreg/error.hpp"

namespace rbfreg {

namespace {

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
  std::array<char, 64> buf{};
  // Adding +0.0 folds a negative zero into "0".
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value + 0.0, fmt, precision);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace

std::string format_sig(double value, int digits) {
  return to_chars_string(value, std::chars_format::general, digits);
}

std::string format_fixed(double value, int decimals) {
  return to_chars_string(value, std::chars_format::fixed, decimals);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace rbfreg
