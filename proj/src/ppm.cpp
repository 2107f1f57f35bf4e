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
#include "lulc/ppm.hpp"

#include <string>

namespace lulc {

namespace {

/// Composites one channel over a white background with rounding:
/// (c·a + 255·(255−a)) / 255, rounded to nearest.
std::uint8_t over_white(std::uint8_t channel, std::uint8_t alpha) {
    unsigned v = channel * alpha + 255u * (255u - alpha);
    return static_cast<std::uint8_t>((v + 127u) / 255u);
}

}  // namespace

std::vector<std::uint8_t> write_ppm(const RasterImage& img) {
    img.validate();
    std::string header = "P6\n" + std::to_string(img.width) + " " +
                         std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + img.pixel_count() * 3);
    out.insert(out.end(), header.begin(), header.end());
    for (const auto& px : img.pixels) {
        out.push_back(over_white(px.r, px.a));
        out.push_back(over_white(px.g, px.a));
        out.push_back(over_white(px.b, px.a));
    }
    return out;
}

}  // namespace lulc
