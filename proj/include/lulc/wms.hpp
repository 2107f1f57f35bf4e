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
#include <filesystem>
#include <string>
#include <vector>

namespace lulc {

enum class WmsVersion { v1_1_1, v1_3_0 };

/// "1.1.1" / "1.3.0".
std::string to_string(WmsVersion version);

struct WmsRequest {
    std::string endpoint;  // base URL, no query string
    WmsVersion version = WmsVersion::v1_1_1;
    std::string layer;
    std::uint32_t crs_code = 4326;
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
    std::uint32_t width = 0, height = 0;
    std::string format = "image/tiff";
};

/// Builds the GetMap URL with a fixed parameter order (SERVICE, VERSION,
/// REQUEST, LAYERS, STYLES, SRS|CRS, BBOX, WIDTH, HEIGHT, FORMAT) so the
/// output is byte-reproducible. Values are percent-encoded per the RFC 3986
/// unreserved set; BBOX components are shortest-round-trip decimals joined
/// by raw commas. Version 1.3.0 uses CRS instead of SRS and, for EPSG:4326,
/// flips the BBOX to lat/lon axis order. Throws BadBbox (empty or inverted
/// box), BadSize (zero width or height).
std::string build_getmap_url(const WmsRequest& req);

/// Hex SHA-256 of the URL — the cache file is cache_dir/<key>.bin.
std::string url_cache_key(const std::string& url);

/// Returns the cached body for the URL when present (no network touched);
/// otherwise issues an HTTP GET (following at most 3 redirect hops),
/// requires status 200, stores the body atomically (temp + rename), and
/// returns it. Throws Timeout, HttpStatus (non-200; nothing cached),
/// NetworkError (connection failures, malformed URL, cache I/O).
std::vector<std::uint8_t> fetch_map(const std::string& url,
                                    const std::filesystem::path& cache_dir,
                                    int timeout_seconds = 30);

}  // namespace lulc
