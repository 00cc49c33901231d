#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "rbfreg/experiments.hpp"
#include "rbfreg/format.hpp"

namespace rbfreg {

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int integer(const char* what) {
    skip_space_and_comments();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(bytes_.data() + pos_, bytes_.data() + bytes_.size(), value);
    if (ec != std::errc()) throw Error(ErrorKind::Validation, std::string("PGM: cannot read ") + what);
    pos_ = static_cast<std::size_t>(ptr - bytes_.data());
    return value;
  }

  std::string_view token(std::size_t n) {
    skip_space_and_comments();
    if (pos_ + n > bytes_.size()) throw Error(ErrorKind::Validation, "PGM: truncated header");
    auto t = bytes_.substr(pos_, n);
    pos_ += n;
    return t;
  }

  std::string_view raw(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw Error(ErrorKind::Validation, "PGM: truncated pixel data");
    auto t = bytes_.substr(pos_, n);
    pos_ += n;
    return t;
  }

  // Exactly one whitespace byte separates the header from binary data.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorKind::Validation, "PGM: missing separator before pixel data");
    }
    ++pos_;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

RasterImage::RasterImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), maxval(255),
      pixels(static_cast<std::size_t>(std::max(w, 0)) * static_cast<std::size_t>(std::max(h, 0)), fill) {
  validate();
}

void RasterImage::validate() const {
  if (width <= 0 || height <= 0) throw Error(ErrorKind::Validation, "image must be nonempty");
  if (maxval <= 0 || maxval > 255) throw Error(ErrorKind::Validation, "image maxval must be in 1..255");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::Validation, "pixel count does not match image size");
  }
  for (auto v : pixels) {
    if (v > maxval) throw Error(ErrorKind::Validation, "pixel exceeds maxval");
  }
}

RasterImage parse_pgm(std::string_view bytes) {
  PgmReader reader(bytes);
  const auto magic = reader.token(2);
  const bool binary = magic == "P5";
  if (!binary && magic != "P2") throw Error(ErrorKind::Validation, "not a P2/P5 graymap");
  RasterImage img;
  img.width = reader.integer("width");
  img.height = reader.integer("height");
  img.maxval = reader.integer("maxval");
  if (img.width <= 0 || img.height <= 0 || img.maxval <= 0 || img.maxval > 255) {
    throw Error(ErrorKind::Validation, "PGM: unsupported dimensions or maxval");
  }
  const auto count = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);
  if (binary) {
    reader.single_space();
    const auto data = reader.raw(count);
    std::transform(data.begin(), data.end(), img.pixels.begin(),
                   [](char c) { return static_cast<std::uint8_t>(c); });
  } else {
    for (auto& px : img.pixels) {
      const int v = reader.integer("pixel");
      if (v < 0 || v > img.maxval) throw Error(ErrorKind::Validation, "PGM: pixel out of range");
      px = static_cast<std::uint8_t>(v);
    }
  }
  img.validate();
  return img;
}

RasterImage read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

std::string encode_pgm(const RasterImage& img, bool binary) {
  img.validate();
  std::string out = std::string(binary ? "P5" : "P2") + "\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n" + std::to_string(img.maxval) + "\n";
  if (binary) {
    out.append(img.pixels.begin(), img.pixels.end());
    return out;
  }
  for (int row = 0; row < img.height; ++row) {
    for (int col = 0; col < img.width; ++col) {
      if (col) out += ' ';
      out += std::to_string(img.at(col, row));
    }
    out += '\n';
  }
  return out;
}

RasterImage warp_image(const RasterImage& img, const LandmarkPairs& pairs, const KernelSpec& kernel) {
  img.validate();
  const auto [backward, diag] = fit(invert_roles(pairs), kernel);
  (void)diag;

  RasterImage out = img;
  const double w = img.width;
  const double h = img.height;
  auto sample = [&](int col, int row) -> double {
    col = std::clamp(col, 0, img.width - 1);
    row = std::clamp(row, 0, img.height - 1);
    return img.at(col, row);
  };
  for (int row = 0; row < img.height; ++row) {
    for (int col = 0; col < img.width; ++col) {
      const Point2 p((col + 0.5) / w, (row + 0.5) / h);
      const Point2 q = map_point(backward, p);
      // Continuous pixel coordinates with centres on integers.
      const double u = std::clamp(q.x() * w - 0.5, 0.0, w - 1.0);
      const double v = std::clamp(q.y() * h - 0.5, 0.0, h - 1.0);
      const int c0 = static_cast<int>(std::floor(u));
      const int r0 = static_cast<int>(std::floor(v));
      const double fu = u - c0;
      const double fv = v - r0;
      const double top = (1.0 - fu) * sample(c0, r0) + fu * sample(c0 + 1, r0);
      const double bottom = (1.0 - fu) * sample(c0, r0 + 1) + fu * sample(c0 + 1, r0 + 1);
      const double value = (1.0 - fv) * top + fv * bottom;
      out.at(col, row) = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, static_cast<long>(img.maxval)));
    }
  }
  return out;
}

}  // namespace rbfreg
