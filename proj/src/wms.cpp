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
#include "lulc/wms.hpp"

#include <openssl/evp.h>

#include <httplib.h>

#include "lulc/errors.hpp"
#include "lulc/io.hpp"
#include "text_util.hpp"

namespace lulc {

namespace {

bool unreserved(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
           c == '~';
}

/// RFC 3986 encoding over the unreserved set; everything else is %XX.
std::string percent_encode(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (unreserved(c)) {
            out += c;
        } else {
            auto byte = static_cast<unsigned char>(c);
            out += '%';
            out += hex[byte >> 4];
            out += hex[byte & 0xF];
        }
    }
    return out;
}

struct SplitUrl {
    std::string base;        // scheme://host[:port]
    std::string path_query;  // "/path?query", at least "/"
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw NetworkError("URL has no scheme: " + url);
    auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw NetworkError("unsupported URL scheme \"" + scheme + "\"");
    auto host_start = scheme_end + 3;
    auto path_start = url.find_first_of("/?", host_start);
    if (path_start == host_start) throw NetworkError("URL has no host: " + url);
    SplitUrl split;
    if (path_start == std::string::npos) {
        split.base = url;
        split.path_query = "/";
    } else {
        split.base = url.substr(0, path_start);
        split.path_query = url.substr(path_start);
        if (split.path_query[0] == '?') split.path_query.insert(0, "/");
    }
    return split;
}

/// Resolves a Location header against the URL it came from.
std::string resolve_location(const std::string& from,
                             const std::string& location) {
    if (location.find("://") != std::string::npos) return location;
    SplitUrl split = split_url(from);
    if (!location.empty() && location[0] == '/') return split.base + location;
    // Relative path: replace everything after the last path slash.
    auto query = split.path_query.find('?');
    auto path = split.path_query.substr(0, query);
    auto last_slash = path.find_last_of('/');
    return split.base + path.substr(0, last_slash + 1) + location;
}

std::vector<std::uint8_t> http_get(const std::string& url,
                                   int timeout_seconds) {
    std::string current = url;
    for (int hop = 0; hop <= 3; ++hop) {
        SplitUrl split = split_url(current);
        httplib::Client client(split.base);
        client.set_follow_location(false);  // hops are counted here instead
        client.set_connection_timeout(timeout_seconds, 0);
        client.set_read_timeout(timeout_seconds, 0);
        client.set_write_timeout(timeout_seconds, 0);

        auto res = client.Get(split.path_query);
        if (!res) {
            switch (res.error()) {
                case httplib::Error::ConnectionTimeout:
                case httplib::Error::Read:
                case httplib::Error::Write:
                    throw Timeout("request to " + current + " timed out");
                default:
                    throw NetworkError("request to " + current + " failed: " +
                                       httplib::to_string(res.error()));
            }
        }
        int status = res->status;
        if (status == 301 || status == 302 || status == 303 || status == 307 ||
            status == 308) {
            auto location = res->get_header_value("Location");
            if (location.empty())
                throw NetworkError("redirect from " + current +
                                   " without a Location header");
            current = resolve_location(current, location);
            continue;
        }
        if (status != 200) throw HttpStatus(status);
        return std::vector<std::uint8_t>(res->body.begin(), res->body.end());
    }
    throw NetworkError("more than 3 redirect hops from " + url);
}

}  // namespace

std::string to_string(WmsVersion version) {
    return version == WmsVersion::v1_1_1 ? "1.1.1" : "1.3.0";
}

std::string build_getmap_url(const WmsRequest& req) {
    if (!(req.min_x < req.max_x) || !(req.min_y < req.max_y))
        throw BadBbox("bbox must satisfy min_x < max_x and min_y < max_y");
    if (req.width < 1 || req.height < 1)
        throw BadSize("width and height must be at least 1");

    bool v13 = req.version == WmsVersion::v1_3_0;
    std::string crs_value = "EPSG:" + std::to_string(req.crs_code);

    // WMS 1.3.0 declares EPSG:4326 as lat/lon, so the box flips there.
    double b0 = req.min_x, b1 = req.min_y, b2 = req.max_x, b3 = req.max_y;
    if (v13 && req.crs_code == 4326) {
        b0 = req.min_y;
        b1 = req.min_x;
        b2 = req.max_y;
        b3 = req.max_x;
    }
    std::string bbox = percent_encode(detail::fmt_shortest(b0)) + ',' +
                       percent_encode(detail::fmt_shortest(b1)) + ',' +
                       percent_encode(detail::fmt_shortest(b2)) + ',' +
                       percent_encode(detail::fmt_shortest(b3));

    std::string url = req.endpoint;
    url += "?SERVICE=WMS";
    url += "&VERSION=" + to_string(req.version);
    url += "&REQUEST=GetMap";
    url += "&LAYERS=" + percent_encode(req.layer);
    url += "&STYLES=";
    url += (v13 ? "&CRS=" : "&SRS=") + percent_encode(crs_value);
    url += "&BBOX=" + bbox;
    url += "&WIDTH=" + std::to_string(req.width);
    url += "&HEIGHT=" + std::to_string(req.height);
    url += "&FORMAT=" + percent_encode(req.format);
    return url;
}

std::string url_cache_key(const std::string& url) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(url.data(), url.size(), digest, &length, EVP_sha256(),
                   nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::vector<std::uint8_t> fetch_map(const std::string& url,
                                    const std::filesystem::path& cache_dir,
                                    int timeout_seconds) {
    auto entry = cache_dir / (url_cache_key(url) + ".bin");
    if (std::filesystem::exists(entry)) return read_file(entry);

    auto body = http_get(url, timeout_seconds);

    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (ec)
        throw NetworkError("cannot create cache directory " +
                           cache_dir.string() + ": " + ec.message());
    write_file_atomic(entry, body);
    return body;
}

}  // namespace lulc
