/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "lulc/errors.hpp"

namespace lulc {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Rgba {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 255;

    Rgb rgb() const { return {r, g, b}; }

    friend bool operator==(const Rgba&, const Rgba&) = default;
};

/// Affine pixel-to-geo mapping. The top-left corner of pixel (0,0) sits at
/// (origin_x, origin_y); x grows with columns, y shrinks with rows. Both
/// scales are positive magnitudes.
struct GeoTransform {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double scale_x = 1.0;
    double scale_y = 1.0;
    std::uint32_t crs_code = 4326;

    friend bool operator==(const GeoTransform&, const GeoTransform&) = default;
};

/// Georeferenced RGBA image. Pixels are row-major with top-left origin,
/// 8 bits per channel. `georeferenced` is false when the source carried no
/// geolocation tags (the transform then defaults to identity).
struct RasterImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<Rgba> pixels;
    GeoTransform transform;
    bool georeferenced = true;

    RasterImage() = default;
    RasterImage(std::uint32_t w, std::uint32_t h, Rgba fill = {0, 0, 0, 255})
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    Rgba& at(std::uint32_t row, std::uint32_t col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    const Rgba& at(std::uint32_t row, std::uint32_t col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }

    /// Throws Error unless width/height are >= 1 and the pixel buffer has
    /// exactly width * height samples.
    void validate() const {
        if (width < 1 || height < 1)
            throw Error("raster dimensions must be at least 1x1");
        if (pixels.size() != pixel_count())
            throw Error("raster pixel buffer does not match dimensions");
        if (transform.scale_x <= 0 || transform.scale_y <= 0)
            throw Error("raster pixel scales must be positive");
    }
};

/// Per-pixel admission mask, stored one byte per cell.
class BitGrid {
public:
    BitGrid() = default;
    BitGrid(std::uint32_t width, std::uint32_t height, bool initial = false)
        : width_(width),
          height_(height),
          cells_(static_cast<std::size_t>(width) * height, initial ? 1 : 0) {}

    std::uint32_t width() const { return width_; }
    std::uint32_t height() const { return height_; }

    bool get(std::uint32_t row, std::uint32_t col) const {
        return cells_[static_cast<std::size_t>(row) * width_ + col] != 0;
    }
    void set(std::uint32_t row, std::uint32_t col, bool value) {
        cells_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
    }

    std::size_t count_set() const {
        std::size_t n = 0;
        for (auto c : cells_) n += c;
        return n;
    }

    friend bool operator==(const BitGrid&, const BitGrid&) = default;

private:
    std::uint32_t width_ = 0;
    std::uint32_t height_ = 0;
    std::vector<std::uint8_t> cells_;
};

}  // namespace lulc
