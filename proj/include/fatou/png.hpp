#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fatou/raster.hpp"

namespace fatou {

// Minimal 8-bit RGB PNG encoder (deterministic: fixed zlib level, no
// ancillary chunks).  data is row-major RGB, 3 bytes per pixel.
std::vector<uint8_t> encode_png_rgb8(const uint8_t* data, int width, int height);
void write_png_rgb8(const std::string& path, const uint8_t* data, int width,
                    int height);

enum class ColorMode { EscapeTime, Components };

// Cyclic escape-time palette with black saturated pixels, or a component-id
// recoloring.
std::vector<uint8_t> colorize(const LabelGrid& g, ColorMode mode);
void write_grid_png(const std::string& path, const LabelGrid& g,
                    ColorMode mode = ColorMode::EscapeTime);

}  // namespace fatou
