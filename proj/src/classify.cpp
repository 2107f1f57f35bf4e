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
#include "lulc/classify.hpp"

#include <cstdlib>

#include "lulc/errors.hpp"

namespace lulc {

namespace {

int channel_distance(std::uint8_t a, std::uint8_t b) {
    return std::abs(static_cast<int>(a) - static_cast<int>(b));
}

/// L∞ distance between a pixel's RGB and a band center.
int chebyshev(Rgba pixel, Rgb center) {
    int d = channel_distance(pixel.r, center.r);
    d = std::max(d, channel_distance(pixel.g, center.g));
    d = std::max(d, channel_distance(pixel.b, center.b));
    return d;
}

}  // namespace

void LabelField::recount() {
    histogram.assign(band_count + 2, 0);
    for (Label label : labels) {
        if (label == kUnclassified) ++histogram[band_count];
        else if (label == kNodata) ++histogram[band_count + 1];
        else ++histogram[static_cast<std::size_t>(label)];
    }
}

bool match_band(Rgba pixel, const ColorBand& band) {
    return chebyshev(pixel, band.color) <= band.tolerance;
}

Label classify_pixel(Rgba pixel, const BandSet& bands) {
    if (pixel.a < 128) return kNodata;
    Label best = kUnclassified;
    int best_distance = 256;
    for (std::size_t i = 0; i < bands.bands.size(); ++i) {
        const auto& band = bands.bands[i];
        int d = chebyshev(pixel, band.color);
        // Strict < keeps the earliest band on distance ties.
        if (d <= band.tolerance && d < best_distance) {
            best = static_cast<Label>(i);
            best_distance = d;
        }
    }
    return best;
}

LabelField classify_raster(const RasterImage& img, const BandSet& bands,
                           const BitGrid* mask) {
    img.validate();
    if (mask && (mask->width() != img.width || mask->height() != img.height))
        throw DimensionMismatch(
            "mask is " + std::to_string(mask->width()) + "x" +
            std::to_string(mask->height()) + " but the raster is " +
            std::to_string(img.width) + "x" + std::to_string(img.height));

    LabelField field(img.width, img.height, bands.size(), kUnclassified);
    for (std::uint32_t row = 0; row < img.height; ++row) {
        for (std::uint32_t col = 0; col < img.width; ++col) {
            field.at(row, col) = (mask && !mask->get(row, col))
                                     ? kNodata
                                     : classify_pixel(img.at(row, col), bands);
        }
    }
    field.recount();
    return field;
}

RasterImage render_labels(const LabelField& field, const BandSet& bands,
                          Rgb unclassified_color, bool nodata_transparent,
                          const std::optional<GeoTransform>& reference) {
    RasterImage img(field.width, field.height);
    if (reference) {
        img.transform = *reference;
    } else {
        img.georeferenced = false;
    }
    Rgba fallback{unclassified_color.r, unclassified_color.g,
                  unclassified_color.b, 255};
    for (std::size_t i = 0; i < field.labels.size(); ++i) {
        Label label = field.labels[i];
        if (label >= 0) {
            Rgb c = bands.bands[static_cast<std::size_t>(label)].color;
            img.pixels[i] = {c.r, c.g, c.b, 255};
        } else if (label == kNodata && nodata_transparent) {
            img.pixels[i] = {0, 0, 0, 0};
        } else {
            img.pixels[i] = fallback;
        }
    }
    return img;
}

}  // namespace lulc
