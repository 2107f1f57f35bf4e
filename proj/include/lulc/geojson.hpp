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

#include <string>
#include <vector>

#include "lulc/region.hpp"

namespace lulc {

/// Parses a GeoJSON document into polygon Regions. Supported roots:
/// Polygon, MultiPolygon, Feature, FeatureCollection. A MultiPolygon
/// yields one Region per member polygon (they share the feature id).
/// A Feature's "id" or "name" property, when a string, becomes Region.id;
/// otherwise ids default to the polygon ordinal as text. Features with
/// null geometry are skipped.
///
/// Throws ParseError (malformed JSON, with byte offset), UnsupportedGeometry
/// (Point, LineString, ...), SchemaError (structurally invalid coordinates:
/// open rings, rings under 4 points, non-numeric positions).
std::vector<Region> read_geojson_polygons(const std::string& text);

}  // namespace lulc
