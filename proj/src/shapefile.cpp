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
#include "lulc/shapefile.hpp"

#include "bytes.hpp"
#include "lulc/errors.hpp"

namespace lulc {

namespace {

constexpr std::uint32_t kFileCode = 9994;
constexpr std::uint32_t kNullShape = 0;
constexpr std::uint32_t kPolygonShape = 5;
constexpr std::size_t kHeaderBytes = 100;

/// Parses one polygon record's content (after the 4-byte shape type) into
/// rings. `base` addresses the content start (the shape type word).
Region parse_polygon(const detail::ByteView& view, std::size_t base,
                     std::size_t content_bytes, std::size_t record_index) {
    auto fail = [&](const std::string& what) -> SchemaError {
        return SchemaError("polygon record " + std::to_string(record_index) +
                           ": " + what);
    };

    if (content_bytes < 44)
        throw Truncated("polygon record " + std::to_string(record_index) +
                        " content too short for its fixed fields");
    // Layout: type (4) + bounding box (32) + part and point counts.
    std::uint32_t num_parts = view.u32le(base + 36);
    std::uint32_t num_points = view.u32le(base + 40);

    std::size_t expected = 44 + static_cast<std::size_t>(num_parts) * 4 +
                           static_cast<std::size_t>(num_points) * 16;
    if (content_bytes != expected)
        throw Truncated("polygon record " + std::to_string(record_index) +
                        " content length does not match its counts");

    Region region;
    region.id = std::to_string(record_index);
    if (num_parts == 0) {
        if (num_points != 0) throw fail("points without any part");
        return region;
    }

    std::size_t parts_at = base + 44;
    std::size_t points_at = parts_at + static_cast<std::size_t>(num_parts) * 4;

    std::vector<std::uint32_t> parts(num_parts);
    for (std::uint32_t i = 0; i < num_parts; ++i)
        parts[i] = view.u32le(parts_at + i * 4);
    if (parts[0] != 0) throw fail("first part does not start at point 0");
    for (std::uint32_t i = 1; i < num_parts; ++i)
        if (parts[i] <= parts[i - 1] || parts[i] >= num_points)
            throw fail("part starts not strictly increasing");

    for (std::uint32_t i = 0; i < num_parts; ++i) {
        std::uint32_t begin = parts[i];
        std::uint32_t end = (i + 1 < num_parts) ? parts[i + 1] : num_points;
        if (end - begin < 4) throw fail("ring with fewer than 4 points");
        std::vector<Point> ring;
        ring.reserve(end - begin);
        for (std::uint32_t p = begin; p < end; ++p) {
            std::size_t at = points_at + static_cast<std::size_t>(p) * 16;
            ring.push_back({view.f64le(at), view.f64le(at + 8)});
        }
        if (!(ring.front() == ring.back())) throw fail("ring is not closed");
        region.rings.push_back(std::move(ring));
    }
    return region;
}

}  // namespace

std::vector<Region> read_shapefile_polygons(
    std::span<const std::uint8_t> bytes) {
    detail::ByteView view(bytes);
    if (bytes.size() < 4)
        throw Truncated("buffer too short for a shapefile file code");
    if (view.u32be(0) != kFileCode)
        throw BadFileCode("shapefile file code is not 9994");
    view.require(0, kHeaderBytes);

    // The header declares the total length in 16-bit words; records beyond
    // it are ignored, records crossing it are an error.
    std::size_t declared_end = static_cast<std::size_t>(view.u32be(24)) * 2;
    if (declared_end < kHeaderBytes)
        throw Truncated("declared shapefile length shorter than its header");

    std::vector<Region> regions;
    std::size_t offset = kHeaderBytes;
    std::size_t record_index = 0;
    while (offset + 8 <= declared_end) {
        std::size_t content_bytes =
            static_cast<std::size_t>(view.u32be(offset + 4)) * 2;
        std::size_t content_at = offset + 8;
        if (content_at + content_bytes > declared_end)
            throw Truncated("record " + std::to_string(record_index) +
                            " runs past the declared file length");
        if (content_bytes < 4)
            throw Truncated("record " + std::to_string(record_index) +
                            " too short for a shape type");
        std::uint32_t shape_type = view.u32le(content_at);
        if (shape_type == kPolygonShape) {
            regions.push_back(
                parse_polygon(view, content_at, content_bytes, record_index));
        } else if (shape_type != kNullShape) {
            throw UnsupportedShapeType(
                "record " + std::to_string(record_index) + " has shape type " +
                std::to_string(shape_type) + " (only polygon and null)");
        }
        offset = content_at + content_bytes;
        ++record_index;
    }
    return regions;
}

}  // namespace lulc
