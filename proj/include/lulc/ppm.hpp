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

#include "lulc/raster.hpp"

namespace lulc {

/// Encodes the image as a binary P6 PPM (max value 255), alpha composited
/// over white with round-to-nearest. A dependency-free quick view; the
/// geotransform is not representable and is dropped.
std::vector<std::uint8_t> write_ppm(const RasterImage& img);

}  // namespace lulc
