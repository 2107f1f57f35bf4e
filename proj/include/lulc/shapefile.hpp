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
#include <span>
#include <vector>

#include "lulc/region.hpp"

namespace lulc {

/// Parses an ESRI .shp main file and returns one Region per non-null
/// polygon record, rings split per the record's parts array. Null records
/// (type 0) are skipped but still consume a record slot. Region ids default
/// to the 0-based record position rendered as text; callers that know the
/// real names (from GeoJSON or elsewhere) may rebind them.
///
/// Only the main file is read; .shx/.dbf companions are ignored.
///
/// Throws BadFileCode (file code word is not 9994), UnsupportedShapeType
/// (any record type other than 0 or 5), Truncated (structure runs past the
/// buffer), SchemaError (ring not closed or shorter than 4 points).
std::vector<Region> read_shapefile_polygons(std::span<const std::uint8_t> bytes);

}  // namespace lulc
