#pragma once

#include <cstddef>

#include "sgp/types.hpp"

namespace sgp::imaging {

struct ImageShape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  std::size_t index(std::size_t r, std::size_t c) const { return r * cols + c; }
  bool operator==(const ImageShape&) const = default;
};

/// Row-major image of doubles.
struct Image {
  ImageShape shape;
  Vector pixels;

  Image() = default;
  Image(ImageShape s, Vector p);
  static Image zeros(ImageShape s);

  double& at(std::size_t r, std::size_t c) { return pixels[static_cast<Eigen::Index>(shape.index(r, c))]; }
  double at(std::size_t r, std::size_t c) const {
    return pixels[static_cast<Eigen::Index>(shape.index(r, c))];
  }
};

}  // namespace sgp::imaging
