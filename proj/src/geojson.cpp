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
#include "lulc/geojson.hpp"

#include <json.hpp>
#include <optional>

#include "lulc/errors.hpp"

namespace lulc {

namespace {

using nlohmann::json;

std::vector<Point> parse_ring(const json& ring) {
    if (!ring.is_array() || ring.size() < 4)
        throw SchemaError("polygon ring must be an array of at least 4 positions");
    std::vector<Point> points;
    points.reserve(ring.size());
    for (const auto& position : ring) {
        // A position is [lon, lat, ...]; any extra elements are ignored.
        if (!position.is_array() || position.size() < 2 ||
            !position[0].is_number() || !position[1].is_number())
            throw SchemaError("position must be an array of at least 2 numbers");
        points.push_back(
            {position[0].get<double>(), position[1].get<double>()});
    }
    if (!(points.front() == points.back()))
        throw SchemaError("polygon ring is not closed");
    return points;
}

Region parse_polygon(const json& coordinates, std::string id) {
    if (!coordinates.is_array() || coordinates.empty())
        throw SchemaError("Polygon coordinates must be a non-empty ring array");
    Region region;
    region.id = std::move(id);
    for (const auto& ring : coordinates) region.rings.push_back(parse_ring(ring));
    return region;
}

/// Walks one GeoJSON object, appending Regions. `bound_id` carries a
/// Feature's id down to its geometry; without one each polygon gets its
/// output ordinal as id.
void collect(const json& value, const std::optional<std::string>& bound_id,
             std::vector<Region>& out) {
    if (!value.is_object()) throw SchemaError("GeoJSON value is not an object");
    auto type_it = value.find("type");
    if (type_it == value.end() || !type_it->is_string())
        throw SchemaError("GeoJSON object has no \"type\" string");
    const std::string type = type_it->get<std::string>();

    auto next_id = [&] {
        return bound_id ? *bound_id : std::to_string(out.size());
    };

    if (type == "Polygon") {
        auto coords = value.find("coordinates");
        if (coords == value.end())
            throw SchemaError("Polygon has no \"coordinates\"");
        out.push_back(parse_polygon(*coords, next_id()));
    } else if (type == "MultiPolygon") {
        auto coords = value.find("coordinates");
        if (coords == value.end() || !coords->is_array())
            throw SchemaError("MultiPolygon has no coordinate array");
        for (const auto& polygon : *coords)
            out.push_back(parse_polygon(polygon, next_id()));
    } else if (type == "Feature") {
        std::optional<std::string> id = bound_id;
        auto props = value.find("properties");
        if (!id && props != value.end() && props->is_object()) {
            for (const char* key : {"id", "name"}) {
                auto it = props->find(key);
                if (it != props->end() && it->is_string()) {
                    id = it->get<std::string>();
                    break;
                }
            }
        }
        auto geometry = value.find("geometry");
        if (geometry == value.end())
            throw SchemaError("Feature has no \"geometry\"");
        if (geometry->is_null()) return;  // geometry-less features are legal
        collect(*geometry, id, out);
    } else if (type == "FeatureCollection") {
        auto features = value.find("features");
        if (features == value.end() || !features->is_array())
            throw SchemaError("FeatureCollection has no \"features\" array");
        for (const auto& feature : *features) collect(feature, bound_id, out);
    } else {
        throw UnsupportedGeometry("GeoJSON type \"" + type +
                                  "\" (only polygons are boundaries)");
    }
}

}  // namespace

std::vector<Region> read_geojson_polygons(const std::string& text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!document.is_object())
        throw ParseError("GeoJSON root is not an object", 0);

    std::vector<Region> regions;
    collect(document, std::nullopt, regions);
    return regions;
}

}  // namespace lulc
