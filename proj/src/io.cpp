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
#include "lulc/io.hpp"

#include <atomic>
#include <fstream>
#include <random>

#include "lulc/errors.hpp"

namespace lulc {

namespace {

void write_atomic_impl(const std::filesystem::path& path, const char* data,
                       std::size_t size) {
    // Unique sibling temp name so concurrent writers never share one; the
    // final rename is what makes the write atomic.
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    auto nonce = std::to_string(rd()) + "-" + std::to_string(counter++);
    std::filesystem::path temp = path;
    temp += ".tmp-" + nonce;

    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + temp.string() + " for writing");
        out.write(data, static_cast<std::streamsize>(size));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(temp, ec);
            throw Error("failed writing " + temp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::error_code cleanup;
        std::filesystem::remove(temp, cleanup);
        throw Error("failed to move " + temp.string() + " into place: " +
                    ec.message());
    }
}

}  // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes;
    in.seekg(0, std::ios::end);
    auto size = in.tellg();
    if (size < 0) throw Error("cannot read " + path.string());
    bytes.resize(static_cast<std::size_t>(size));
    in.seekg(0);
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!in && !bytes.empty()) throw Error("failed reading " + path.string());
    return bytes;
}

std::string read_text_file(const std::filesystem::path& path) {
    auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
    write_atomic_impl(path, reinterpret_cast<const char*>(bytes.data()),
                      bytes.size());
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text) {
    write_atomic_impl(path, text.data(), text.size());
}

}  // namespace lulc
