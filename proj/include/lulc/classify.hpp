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
#include <optional>
#include <vector>

#include "lulc/bands.hpp"
#include "lulc/raster.hpp"

namespace lulc {

/// Per-pixel label: a band index (0..N-1) or one of the two sentinels.
using Label = std::int32_t;

inline constexpr Label kUnclassified = -1;  // no band matched
inline constexpr Label kNodata = -2;        // transparent or masked out

/// Per-pixel band assignment plus a histogram. The histogram has
/// band_count + 2 buckets: one per band, then UNCLASSIFIED, then NODATA;
/// its counts always sum to width * height.
struct LabelField {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::size_t band_count = 0;
    std::vector<Label> labels;
    std::vector<std::size_t> histogram;

    LabelField() = default;
    LabelField(std::uint32_t w, std::uint32_t h, std::size_t bands,
               Label fill = kUnclassified)
        : width(w),
          height(h),
          band_count(bands),
          labels(static_cast<std::size_t>(w) * h, fill),
          histogram(bands + 2, 0) {
        recount();
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    Label& at(std::uint32_t row, std::uint32_t col) {
        return labels[static_cast<std::size_t>(row) * width + col];
    }
    Label at(std::uint32_t row, std::uint32_t col) const {
        return labels[static_cast<std::size_t>(row) * width + col];
    }

    std::size_t band_pixels(std::size_t band) const { return histogram[band]; }
    std::size_t unclassified_pixels() const { return histogram[band_count]; }
    std::size_t nodata_pixels() const { return histogram[band_count + 1]; }

    /// Rebuilds the histogram from the label array.
    void recount();

    friend bool operator==(const LabelField&, const LabelField&) = default;
};

/// Chebyshev box test: true iff every channel of the pixel's RGB lies
/// within band.tolerance of the band color. Alpha is ignored here.
bool match_band(Rgba pixel, const ColorBand& band);

/// NODATA when alpha < 128; otherwise the matching band with the smallest
/// L-infinity distance, ties to the lowest band index; UNCLASSIFIED when
/// no band matches.
Label classify_pixel(Rgba pixel, const BandSet& bands);

/// Classifies every pixel; cells excluded by the mask become NODATA without
/// being matched. Throws DimensionMismatch when a mask is present with a
/// different shape. Output is independent of pixel visitation order.
LabelField classify_raster(const RasterImage& img, const BandSet& bands,
                           const BitGrid* mask = nullptr);

/// Paints each band pixel its band color (opaque), UNCLASSIFIED pixels
/// `unclassified_color`, and NODATA pixels either fully transparent
/// (nodata_transparent) or `unclassified_color`. The transform is copied
/// from `reference` when given, else stays identity (ungeoreferenced).
RasterImage render_labels(const LabelField& field, const BandSet& bands,
                          Rgb unclassified_color = {0x80, 0x80, 0x80},
                          bool nodata_transparent = true,
                          const std::optional<GeoTransform>& reference =
                              std::nullopt);

}  // namespace lulc
