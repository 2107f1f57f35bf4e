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

// Internal bounds-checked binary readers/writers shared by the GeoTIFF and
// shapefile codecs. Every read goes through require(), so a malformed
// offset surfaces as Truncated instead of reading out of bounds.

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "lulc/errors.hpp"

namespace lulc::detail {

class ByteView {
public:
    explicit ByteView(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t size() const { return data_.size(); }

    /// Throws Truncated unless [offset, offset+count) lies inside the buffer.
    void require(std::size_t offset, std::size_t count) const {
        if (offset > data_.size() || count > data_.size() - offset)
            throw Truncated("structure at offset " + std::to_string(offset) +
                            " (" + std::to_string(count) +
                            " bytes) runs past end of buffer (" +
                            std::to_string(data_.size()) + " bytes)");
    }

    std::uint8_t u8(std::size_t offset) const {
        require(offset, 1);
        return data_[offset];
    }

    std::uint16_t u16le(std::size_t offset) const {
        require(offset, 2);
        return static_cast<std::uint16_t>(data_[offset] |
                                          (data_[offset + 1] << 8));
    }
    std::uint16_t u16be(std::size_t offset) const {
        require(offset, 2);
        return static_cast<std::uint16_t>((data_[offset] << 8) |
                                          data_[offset + 1]);
    }

    std::uint32_t u32le(std::size_t offset) const {
        require(offset, 4);
        return static_cast<std::uint32_t>(data_[offset]) |
               (static_cast<std::uint32_t>(data_[offset + 1]) << 8) |
               (static_cast<std::uint32_t>(data_[offset + 2]) << 16) |
               (static_cast<std::uint32_t>(data_[offset + 3]) << 24);
    }
    std::uint32_t u32be(std::size_t offset) const {
        require(offset, 4);
        return (static_cast<std::uint32_t>(data_[offset]) << 24) |
               (static_cast<std::uint32_t>(data_[offset + 1]) << 16) |
               (static_cast<std::uint32_t>(data_[offset + 2]) << 8) |
               static_cast<std::uint32_t>(data_[offset + 3]);
    }

    std::uint64_t u64le(std::size_t offset) const {
        std::uint64_t lo = u32le(offset);
        std::uint64_t hi = u32le(offset + 4);
        return lo | (hi << 32);
    }
    std::uint64_t u64be(std::size_t offset) const {
        std::uint64_t hi = u32be(offset);
        std::uint64_t lo = u32be(offset + 4);
        return lo | (hi << 32);
    }

    double f64le(std::size_t offset) const {
        return std::bit_cast<double>(u64le(offset));
    }
    double f64be(std::size_t offset) const {
        return std::bit_cast<double>(u64be(offset));
    }

    std::span<const std::uint8_t> bytes(std::size_t offset,
                                        std::size_t count) const {
        require(offset, count);
        return data_.subspan(offset, count);
    }

private:
    std::span<const std::uint8_t> data_;
};

/// Little-endian append-only writer (the emitted TIFF is always "II").
class ByteBuffer {
public:
    std::vector<std::uint8_t>& data() { return data_; }
    std::vector<std::uint8_t> take() { return std::move(data_); }
    std::size_t size() const { return data_.size(); }

    void u8(std::uint8_t v) { data_.push_back(v); }
    void u16le(std::uint16_t v) {
        data_.push_back(static_cast<std::uint8_t>(v));
        data_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32le(std::uint32_t v) {
        for (int shift = 0; shift < 32; shift += 8)
            data_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    void u32be(std::uint32_t v) {
        for (int shift = 24; shift >= 0; shift -= 8)
            data_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    void f64le(double v) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int shift = 0; shift < 64; shift += 8)
            data_.push_back(static_cast<std::uint8_t>(bits >> shift));
    }
    void raw(const void* src, std::size_t count) {
        auto* p = static_cast<const std::uint8_t*>(src);
        data_.insert(data_.end(), p, p + count);
    }

private:
    std::vector<std::uint8_t> data_;
};

}  // namespace lulc::detail
