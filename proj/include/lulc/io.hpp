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

/// Reads a whole file as bytes. Throws Error when the file cannot be opened
/// or read.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Reads a whole file as text (bytes passed through unchanged).
std::string read_text_file(const std::filesystem::path& path);

/// Writes bytes to `path` atomically: the content goes to a temporary file
/// in the same directory which is then renamed over the target, so a crash
/// mid-write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text);

}  // namespace lulc
