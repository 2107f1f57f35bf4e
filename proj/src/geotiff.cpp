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
#include "lulc/geotiff.hpp"

#include <map>
#include <optional>

#include "bytes.hpp"
#include "lulc/errors.hpp"

namespace lulc {

namespace {

// TIFF tags in the supported baseline subset.
constexpr std::uint16_t kImageWidth = 256;
constexpr std::uint16_t kImageLength = 257;
constexpr std::uint16_t kBitsPerSample = 258;
constexpr std::uint16_t kCompression = 259;
constexpr std::uint16_t kPhotometric = 262;
constexpr std::uint16_t kStripOffsets = 273;
constexpr std::uint16_t kSamplesPerPixel = 277;
constexpr std::uint16_t kRowsPerStrip = 278;
constexpr std::uint16_t kStripByteCounts = 279;
constexpr std::uint16_t kPlanarConfig = 284;
constexpr std::uint16_t kExtraSamples = 338;
constexpr std::uint16_t kTileWidth = 322;
constexpr std::uint16_t kTileLength = 323;
constexpr std::uint16_t kTileOffsets = 324;
constexpr std::uint16_t kTileByteCounts = 325;
constexpr std::uint16_t kModelPixelScale = 33550;
constexpr std::uint16_t kModelTiepoint = 33922;
constexpr std::uint16_t kGeoKeyDirectory = 34735;

// TIFF field types.
constexpr std::uint16_t kTypeShort = 3;
constexpr std::uint16_t kTypeLong = 4;
constexpr std::uint16_t kTypeDouble = 12;

std::size_t type_size(std::uint16_t type) {
    switch (type) {
        case 1:  // BYTE
        case 2:  // ASCII
        case 6:  // SBYTE
        case 7:  // UNDEFINED
            return 1;
        case 3:  // SHORT
        case 8:  // SSHORT
            return 2;
        case 4:   // LONG
        case 9:   // SLONG
        case 11:  // FLOAT
            return 4;
        case 5:   // RATIONAL
        case 10:  // SRATIONAL
        case 12:  // DOUBLE
            return 8;
        default:
            return 0;  // unknown; such tags are skipped
    }
}

struct Entry {
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t value_offset = 0;  // absolute offset of the value bytes
};

/// First-IFD directory with endian-aware field access.
class TiffReader {
public:
    TiffReader(detail::ByteView view, bool big) : view_(view), big_(big) {}

    std::uint16_t u16(std::size_t off) const {
        return big_ ? view_.u16be(off) : view_.u16le(off);
    }
    std::uint32_t u32(std::size_t off) const {
        return big_ ? view_.u32be(off) : view_.u32le(off);
    }
    double f64(std::size_t off) const {
        return big_ ? view_.f64be(off) : view_.f64le(off);
    }

    void load_directory(std::size_t ifd_offset) {
        std::uint16_t count = u16(ifd_offset);
        for (std::uint16_t i = 0; i < count; ++i) {
            std::size_t at = ifd_offset + 2 + static_cast<std::size_t>(i) * 12;
            view_.require(at, 12);
            Entry entry;
            std::uint16_t tag = u16(at);
            entry.type = u16(at + 2);
            entry.count = u32(at + 4);
            std::size_t bytes = type_size(entry.type) * entry.count;
            // Values larger than the 4-byte field live at the pointed-to
            // offset; smaller ones sit inline, left-justified.
            entry.value_offset = bytes > 4 ? u32(at + 8) : at + 8;
            view_.require(entry.value_offset, bytes);
            entries_.emplace(tag, entry);
        }
    }

    const Entry* find(std::uint16_t tag) const {
        auto it = entries_.find(tag);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Integer tag value (SHORT or LONG), first element.
    std::uint32_t scalar(const Entry& e) const {
        if (e.count < 1) throw Truncated("empty integer tag value");
        return integer_at(e, 0);
    }

    std::uint32_t integer_at(const Entry& e, std::uint32_t index) const {
        if (e.type == kTypeShort) return u16(e.value_offset + index * 2);
        if (e.type == kTypeLong) return u32(e.value_offset + index * 4);
        throw UnsupportedFeature("integer tag with field type " +
                                 std::to_string(e.type));
    }

    std::vector<double> doubles(const Entry& e) const {
        if (e.type != kTypeDouble)
            throw UnsupportedFeature("geo tag with field type " +
                                     std::to_string(e.type));
        std::vector<double> out;
        out.reserve(e.count);
        for (std::uint32_t i = 0; i < e.count; ++i)
            out.push_back(f64(e.value_offset + i * 8));
        return out;
    }

    detail::ByteView view() const { return view_; }

private:
    detail::ByteView view_;
    bool big_;
    std::map<std::uint16_t, Entry> entries_;
};

/// GeographicTypeGeoKey (2048) from the GeoKey directory, when present and
/// stored inline (TIFF tag location 0).
std::optional<std::uint32_t> geographic_crs(const TiffReader& tiff,
                                            const Entry& dir) {
    if (dir.count < 4) return std::nullopt;
    std::uint32_t key_count = tiff.integer_at(dir, 3);
    for (std::uint32_t k = 0; k < key_count; ++k) {
        std::uint32_t base = 4 + k * 4;
        if (base + 3 >= dir.count) break;
        std::uint32_t key_id = tiff.integer_at(dir, base);
        std::uint32_t location = tiff.integer_at(dir, base + 1);
        std::uint32_t value = tiff.integer_at(dir, base + 3);
        if (key_id == 2048 && location == 0) return value;
    }
    return std::nullopt;
}

}  // namespace

RasterImage read_geotiff(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4) throw BadMagic("buffer too short for a TIFF header");
    bool big;
    if (bytes[0] == 'I' && bytes[1] == 'I')
        big = false;
    else if (bytes[0] == 'M' && bytes[1] == 'M')
        big = true;
    else
        throw BadMagic("not a TIFF byte-order mark");

    detail::ByteView view(bytes);
    TiffReader tiff(view, big);
    if (tiff.u16(2) != 42) throw BadMagic("TIFF magic number is not 42");
    tiff.load_directory(tiff.u32(4));

    // Reject everything outside the baseline subset before touching pixels.
    for (auto tag : {kTileWidth, kTileLength, kTileOffsets, kTileByteCounts})
        if (tiff.find(tag)) throw UnsupportedFeature("tiled TIFF layout");
    if (const auto* e = tiff.find(kCompression); e && tiff.scalar(*e) != 1)
        throw UnsupportedFeature("TIFF compression " +
                                 std::to_string(tiff.scalar(*e)));
    if (const auto* e = tiff.find(kPlanarConfig); e && tiff.scalar(*e) != 1)
        throw UnsupportedFeature("planar (non-chunky) sample layout");
    if (const auto* e = tiff.find(kPhotometric); e && tiff.scalar(*e) != 2)
        throw UnsupportedFeature("photometric interpretation " +
                                 std::to_string(tiff.scalar(*e)) +
                                 " (only RGB is supported)");

    const auto* width_e = tiff.find(kImageWidth);
    const auto* height_e = tiff.find(kImageLength);
    if (!width_e || !height_e)
        throw SchemaError("TIFF is missing image dimensions");
    std::uint32_t width = tiff.scalar(*width_e);
    std::uint32_t height = tiff.scalar(*height_e);
    if (width < 1 || height < 1)
        throw SchemaError("TIFF image dimensions must be at least 1x1");

    const auto* spp_e = tiff.find(kSamplesPerPixel);
    std::uint32_t spp = spp_e ? tiff.scalar(*spp_e) : 1;
    if (spp != 3 && spp != 4)
        throw UnsupportedFeature(std::to_string(spp) +
                                 " samples per pixel (only RGB/RGBA)");

    const auto* bps_e = tiff.find(kBitsPerSample);
    if (!bps_e) throw UnsupportedFeature("missing bit depth (8 required)");
    for (std::uint32_t i = 0; i < bps_e->count; ++i)
        if (tiff.integer_at(*bps_e, i) != 8)
            throw UnsupportedFeature("bit depth other than 8");

    const auto* offsets_e = tiff.find(kStripOffsets);
    const auto* counts_e = tiff.find(kStripByteCounts);
    if (!offsets_e || !counts_e)
        throw SchemaError("TIFF is missing strip offsets or byte counts");

    const auto* rps_e = tiff.find(kRowsPerStrip);
    std::uint64_t rows_per_strip = rps_e ? tiff.scalar(*rps_e) : 0xFFFFFFFFu;
    if (rows_per_strip == 0) throw SchemaError("rows-per-strip is zero");
    if (rows_per_strip > height) rows_per_strip = height;
    std::uint64_t strips = (height + rows_per_strip - 1) / rows_per_strip;
    if (offsets_e->count != strips || counts_e->count != strips)
        throw Truncated("strip count does not match image height");

    // The whole payload must fit in the buffer; this also bounds the
    // allocation below before trusting the header's dimensions.
    std::uint64_t payload = static_cast<std::uint64_t>(width) * height * spp;
    if (payload > view.size())
        throw Truncated("pixel payload larger than the buffer");

    RasterImage img(width, height);
    std::uint32_t row = 0;
    for (std::uint64_t s = 0; s < strips; ++s) {
        std::uint64_t strip_rows =
            std::min<std::uint64_t>(rows_per_strip, height - row);
        std::uint64_t expected = strip_rows * width * spp;
        if (tiff.integer_at(*counts_e, static_cast<std::uint32_t>(s)) != expected)
            throw Truncated("strip byte count does not match its row span");
        std::size_t at = tiff.integer_at(*offsets_e, static_cast<std::uint32_t>(s));
        auto data = view.bytes(at, expected);
        std::size_t p = 0;
        for (std::uint64_t r = 0; r < strip_rows; ++r, ++row) {
            for (std::uint32_t col = 0; col < width; ++col, p += spp) {
                Rgba px{data[p], data[p + 1], data[p + 2], 255};
                if (spp == 4) px.a = data[p + 3];
                img.at(row, col) = px;
            }
        }
    }

    // Georeferencing: both the pixel-scale and tiepoint tags are needed to
    // anchor the grid; anything less leaves the image ungeoreferenced.
    const auto* scale_e = tiff.find(kModelPixelScale);
    const auto* tie_e = tiff.find(kModelTiepoint);
    if (scale_e && tie_e) {
        auto scale = tiff.doubles(*scale_e);
        auto tie = tiff.doubles(*tie_e);
        if (scale.size() < 2 || tie.size() < 6)
            throw SchemaError("geo tags with too few values");
        if (scale[0] <= 0 || scale[1] <= 0)
            throw UnsupportedFeature("non-positive pixel scale");
        img.transform.scale_x = scale[0];
        img.transform.scale_y = scale[1];
        // Tiepoint maps raster (i, j) onto geo (x, y); shift back to the
        // top-left corner of pixel (0, 0).
        img.transform.origin_x = tie[3] - tie[0] * scale[0];
        img.transform.origin_y = tie[4] + tie[1] * scale[1];
        img.georeferenced = true;
        if (const auto* geo_e = tiff.find(kGeoKeyDirectory))
            if (auto crs = geographic_crs(tiff, *geo_e))
                img.transform.crs_code = *crs;
    } else {
        img.transform = GeoTransform{};
        img.georeferenced = false;
    }

    return img;
}

std::vector<std::uint8_t> write_geotiff(const RasterImage& img) {
    img.validate();

    // Fixed little-endian layout: 8-byte header, one 14-entry IFD, the
    // four out-of-line value blocks, then a single strip of RGBA samples.
    constexpr std::uint32_t kIfdOffset = 8;
    constexpr std::uint32_t kIfdSize = 2 + 14 * 12 + 4;
    constexpr std::uint32_t kBpsOffset = kIfdOffset + kIfdSize;     // 182
    constexpr std::uint32_t kScaleOffset = kBpsOffset + 4 * 2;      // 190
    constexpr std::uint32_t kTieOffset = kScaleOffset + 3 * 8;      // 214
    constexpr std::uint32_t kGeoKeyOffset = kTieOffset + 6 * 8;     // 262
    constexpr std::uint32_t kPixelOffset = kGeoKeyOffset + 12 * 2;  // 286

    std::uint32_t byte_count = img.width * img.height * 4;

    detail::ByteBuffer out;
    out.raw("II", 2);
    out.u16le(42);
    out.u32le(kIfdOffset);

    auto entry = [&](std::uint16_t tag, std::uint16_t type, std::uint32_t count,
                     std::uint32_t value) {
        out.u16le(tag);
        out.u16le(type);
        out.u32le(count);
        if (type == kTypeShort && count == 1) {
            out.u16le(static_cast<std::uint16_t>(value));
            out.u16le(0);
        } else {
            out.u32le(value);
        }
    };

    out.u16le(14);
    entry(kImageWidth, kTypeLong, 1, img.width);
    entry(kImageLength, kTypeLong, 1, img.height);
    entry(kBitsPerSample, kTypeShort, 4, kBpsOffset);
    entry(kCompression, kTypeShort, 1, 1);
    entry(kPhotometric, kTypeShort, 1, 2);
    entry(kStripOffsets, kTypeLong, 1, kPixelOffset);
    entry(kSamplesPerPixel, kTypeShort, 1, 4);
    entry(kRowsPerStrip, kTypeLong, 1, img.height);
    entry(kStripByteCounts, kTypeLong, 1, byte_count);
    entry(kPlanarConfig, kTypeShort, 1, 1);
    entry(kExtraSamples, kTypeShort, 1, 2);  // unassociated alpha
    entry(kModelPixelScale, kTypeDouble, 3, kScaleOffset);
    entry(kModelTiepoint, kTypeDouble, 6, kTieOffset);
    entry(kGeoKeyDirectory, kTypeShort, 12, kGeoKeyOffset);
    out.u32le(0);  // no further IFD

    for (int i = 0; i < 4; ++i) out.u16le(8);  // bits per sample

    out.f64le(img.transform.scale_x);
    out.f64le(img.transform.scale_y);
    out.f64le(0.0);

    // Tiepoint: raster (0, 0) sits at the transform's origin.
    out.f64le(0.0);
    out.f64le(0.0);
    out.f64le(0.0);
    out.f64le(img.transform.origin_x);
    out.f64le(img.transform.origin_y);
    out.f64le(0.0);

    // GeoKey directory: version 1.1.0, two keys — model type geographic,
    // geographic CRS code. (GeoKey values are 16-bit; codes above 65535
    // are not representable.)
    const std::uint16_t keys[12] = {
        1, 1, 0, 2,
        1024, 0, 1, 2,
        2048, 0, 1, static_cast<std::uint16_t>(img.transform.crs_code),
    };
    for (auto k : keys) out.u16le(k);

    for (const auto& px : img.pixels) {
        out.u8(px.r);
        out.u8(px.g);
        out.u8(px.b);
        out.u8(px.a);
    }
    return out.take();
}

}  // namespace lulc
