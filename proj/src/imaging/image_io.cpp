#include "sgp/imaging/image_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "sgp/errors.hpp"

namespace sgp::imaging {

namespace {

constexpr std::array<char, 8> kMagic{'S', 'G', 'P', 'I', 'M', 'A', 'G', 'E'};

static_assert(std::endian::native == std::endian::little,
              "raw image I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  return out;
}

// PGM header token, skipping whitespace and '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  while (true) {
    const int ch = in.get();
    if (ch == EOF) break;
    if (ch == '#') {
      std::string discard;
      std::getline(in, discard);
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

}  // namespace

void write_raw(const std::filesystem::path& path, const Image& image) {
  auto out = open_out(path);
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(image.shape.rows));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(image.shape.cols));
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(sizeof(double) * image.shape.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Image read_raw(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError(path.string() + ": not a raw SGP image");
  const auto rows = get<std::uint32_t>(in);
  const auto cols = get<std::uint32_t>(in);
  if (!in || rows == 0 || cols == 0) throw IoError(path.string() + ": bad header");
  Image img = Image::zeros({rows, cols});
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(sizeof(double) * img.shape.size()));
  if (!in) throw IoError(path.string() + ": truncated pixel data");
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
  auto out = open_out(path);
  out << "P5\n" << image.shape.cols << ' ' << image.shape.rows << "\n65535\n";
  const double lo = image.pixels.minCoeff();
  const double hi = image.pixels.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  for (Eigen::Index i = 0; i < image.pixels.size(); ++i) {
    const double t = std::clamp((image.pixels[i] - lo) / span, 0.0, 1.0);
    const auto level = static_cast<std::uint16_t>(std::lround(t * 65535.0));
    const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xFF)};
    out.write(bytes, 2);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Image read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (pgm_token(in) != "P5") throw IoError(path.string() + ": only binary PGM (P5) is supported");
  std::size_t cols = 0, rows = 0, maxval = 0;
  try {
    cols = std::stoul(pgm_token(in));
    rows = std::stoul(pgm_token(in));
    maxval = std::stoul(pgm_token(in));
  } catch (const std::exception&) {
    throw IoError(path.string() + ": malformed PGM header");
  }
  if (rows == 0 || cols == 0 || maxval == 0 || maxval > 65535) {
    throw IoError(path.string() + ": unsupported PGM header");
  }
  Image img = Image::zeros({rows, cols});
  const bool wide = maxval > 255;
  for (Eigen::Index i = 0; i < img.pixels.size(); ++i) {
    unsigned char b[2] = {0, 0};
    in.read(reinterpret_cast<char*>(b), wide ? 2 : 1);
    img.pixels[i] = wide ? static_cast<double>((b[0] << 8) | b[1]) : static_cast<double>(b[0]);
  }
  if (!in) throw IoError(path.string() + ": truncated PGM data");
  return img;
}

Image read_image(const std::filesystem::path& path) {
  if (path.extension() == ".pgm") return read_pgm(path);
  return read_raw(path);
}

}  // namespace sgp::imaging
