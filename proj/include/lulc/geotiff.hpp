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
#include <span>
#include <vector>

#include "lulc/raster.hpp"

namespace lulc {

/// Decodes a baseline TIFF: uncompressed, strip-based, chunky planar,
/// 8 bits per sample, 3 (RGB) or 4 (RGBA) samples per pixel. Both "II"
/// and "MM" byte orders are accepted. RGB inputs get alpha 255.
///
/// Geolocation comes from ModelPixelScale + ModelTiepoint; the CRS from the
/// GeoKey directory (GeographicTypeGeoKey). When the geo tags are absent the
/// transform stays identity and `georeferenced` is set false.
///
/// Throws BadMagic (not a TIFF header), UnsupportedFeature (compression,
/// bit depth, tiling, planar or photometric layout outside the subset),
/// Truncated (any offset or count pointing outside the buffer).
RasterImage read_geotiff(std::span<const std::uint8_t> bytes);

/// Encodes a RasterImage as a little-endian, uncompressed, single-strip
/// RGBA TIFF with ModelPixelScale, ModelTiepoint, and a GeoKey directory
/// carrying the CRS code. read_geotiff(write_geotiff(img)) reproduces the
/// pixels, dimensions, and transform exactly.
std::vector<std::uint8_t> write_geotiff(const RasterImage& img);

}  // namespace lulc
