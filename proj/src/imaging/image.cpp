#include "sgp/imaging/image.hpp"

#include "sgp/errors.hpp"

namespace sgp::imaging {

Image::Image(ImageShape s, Vector p) : shape(s), pixels(std::move(p)) {
  if (static_cast<std::size_t>(pixels.size()) != shape.size()) {
    throw InvalidInput("Image: pixel count does not match shape");
  }
}

Image Image::zeros(ImageShape s) {
  return Image(s, Vector::Zero(static_cast<Eigen::Index>(s.size())));
}

}  // namespace sgp::imaging
