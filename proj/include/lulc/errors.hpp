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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lulc {

/// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- input data failures -------------------------------------------------

/// Stream does not start with a recognizable header.
class BadMagic : public Error {
public:
    using Error::Error;
};

/// A structure points past the end of the buffer, or the buffer ends
/// mid-structure. Never raised after partial output has been produced.
class Truncated : public Error {
public:
    using Error::Error;
};

/// Valid container, but uses a feature outside the supported subset
/// (compression, bit depth, tiling, ...).
class UnsupportedFeature : public Error {
public:
    using Error::Error;
};

class BadFileCode : public Error {
public:
    using Error::Error;
};

class UnsupportedShapeType : public Error {
public:
    using Error::Error;
};

class UnsupportedGeometry : public Error {
public:
    using Error::Error;
};

class XmlError : public Error {
public:
    using Error::Error;
};

/// Well-formed document that violates the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

class CsvError : public Error {
public:
    using Error::Error;
};

/// Text-level parse failure; carries the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// ---- configuration / shape failures --------------------------------------

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class BadFactor : public Error {
public:
    using Error::Error;
};

class MissingFixedValue : public Error {
public:
    using Error::Error;
};

class NoBands : public Error {
public:
    using Error::Error;
};

class BadBbox : public Error {
public:
    using Error::Error;
};

class BadSize : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// ---- network failures ----------------------------------------------------

class NetworkError : public Error {
public:
    using Error::Error;
};

class Timeout : public Error {
public:
    using Error::Error;
};

/// Server answered with a status other than 200.
class HttpStatus : public Error {
public:
    explicit HttpStatus(int status)
        : Error("http status " + std::to_string(status)), status_(status) {}

    int status() const { return status_; }

private:
    int status_;
};

}  // namespace lulc
