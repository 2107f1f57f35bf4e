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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lulc/bands.hpp"
#include "lulc/census.hpp"
#include "lulc/classify.hpp"
#include "lulc/raster.hpp"
#include "lulc/region.hpp"

namespace lulc {

// ---- pixel areas ---------------------------------------------------------

enum class AreaModeKind { fixed, projected, geographic };

/// How a pixel's footprint in km² is obtained:
///   fixed      — every pixel covers fixed_km2 (the value is required);
///   projected  — scale_x·scale_y / 10⁶, scales in meters;
///   geographic — scales in degrees, footprint shrinks with cos(latitude).
struct AreaMode {
    AreaModeKind kind = AreaModeKind::projected;
    std::optional<double> fixed_km2;

    static AreaMode fixed(double km2) {
        return {AreaModeKind::fixed, km2};
    }
    static AreaMode projected() { return {AreaModeKind::projected, {}}; }
    static AreaMode geographic() { return {AreaModeKind::geographic, {}}; }
};

/// Geographic coordinates of the center of pixel (row, col):
/// x = origin_x + (col + 0.5)·scale_x, y = origin_y − (row + 0.5)·scale_y.
Point pixel_center_geo(const GeoTransform& t, std::uint32_t row,
                       std::uint32_t col);

/// Even-odd containment: true iff a ray from p crosses the union of the
/// region's rings an odd number of times. Ring orientation is irrelevant;
/// holes are just rings. Points exactly on an edge resolve by the half-open
/// crossing convention (each edge owns its lower endpoint in y).
bool point_in_region(Point p, const Region& r);

/// Bit set iff the pixel's center point lies inside the region.
BitGrid rasterize_region(const Region& r, const GeoTransform& t,
                         std::uint32_t width, std::uint32_t height);

/// Footprint of one pixel in the given row. Throws MissingFixedValue when
/// mode is fixed without a value. Geographic mode uses the spherical
/// per-degree constants 111.320 km (longitude at the equator, scaled by
/// cos latitude) and 110.574 km (latitude).
double pixel_area_km2(const GeoTransform& t, std::uint32_t row,
                      const AreaMode& mode);

// ---- area reports --------------------------------------------------------

/// Per-region area roll-up. Bands sum into classes, classes into
/// categories; names keep their first-appearance order. total_km2 covers
/// every pixel: classified + unclassified + nodata.
struct AreaReport {
    std::string region_id;
    std::vector<std::pair<std::string, double>> per_band;
    std::vector<std::pair<std::string, double>> per_class;
    std::vector<std::pair<std::string, double>> per_category;
    double unclassified_km2 = 0.0;
    double nodata_km2 = 0.0;
    double total_km2 = 0.0;

    /// Case-insensitive lookups (names folded like fold_name).
    std::optional<double> class_area(const std::string& name) const;
    std::optional<double> category_area(const std::string& name) const;
    /// Class wins when a name exists as both a class and a category.
    std::optional<double> class_or_category_area(const std::string& name) const;
};

/// Sums pixel footprints per band, per class, and per hierarchy category.
/// Row areas are evaluated once per row, so fixed/projected modes reduce to
/// pixel counts times a constant.
AreaReport area_report(const LabelField& field, const BandSet& bands,
                       const GeoTransform& t, const AreaMode& mode,
                       const std::string& region_id);

// ---- census comparison ---------------------------------------------------

enum class RowStatus { compared, no_census_reference, no_computed_value };

/// "compared", "no-census-reference", "no-computed-value".
std::string to_string(RowStatus status);

struct ComparisonRow {
    std::string class_name;
    std::optional<double> census_km2;
    std::optional<double> computed_km2;
    std::optional<double> abs_error_km2;  // computed − census, when both exist
    std::optional<double> rel_error;      // |abs_error| / census, census > 0
    RowStatus status = RowStatus::compared;
};

struct ComparisonReport {
    std::string region_id;
    std::vector<ComparisonRow> rows;
    double objective_km2 = 0.0;  // Σ |abs_error| over compared rows
};

/// Joins the report against the census rows for `region_id`: census rows
/// first (file order), matched against classes then categories; computed
/// classes with no census row follow (band order) flagged
/// no-census-reference. Census classes the report cannot produce are
/// flagged no-computed-value.
ComparisonReport compare(const AreaReport& report, const CensusTable& census,
                         const std::string& region_id);

// ---- categorical downscale ----------------------------------------------

enum class AggregationRule { majority, central };

/// Reduces the field by factor f into ⌈w/f⌉×⌈h/f⌉ blocks. majority: most
/// frequent non-NODATA label per block, ties to the lowest label (bands in
/// index order, then UNCLASSIFIED), all-NODATA block → NODATA. central:
/// the block cell at (f/2, f/2), clipped to the block's extent. Throws
/// BadFactor when factor < 2.
LabelField aggregate_categorical(const LabelField& field, int factor,
                                 AggregationRule rule);

// ---- report serialization ------------------------------------------------

/// CSV with header class,census_km2,computed_km2,abs_error_km2,rel_error,
/// status. Areas use 2 decimals, rel_error 4; absent values are empty
/// fields.
std::string comparison_csv(const ComparisonReport& report);

/// JSON object {region_id, rows: [...], objective_km2} with full-precision
/// numbers and nulls for absent values.
std::string comparison_json(const ComparisonReport& report);

/// CSV with header kind,name,area_km2; kind ∈ band, class, category,
/// unclassified, nodata, total. Areas use 2 decimals.
std::string area_csv(const AreaReport& report);

/// JSON object with the report's full-precision fields.
std::string area_json(const AreaReport& report);

/// Inverse of area_csv; the CSV carries no region id, so it is supplied.
/// Throws CsvError on malformed rows or unknown kinds.
AreaReport parse_area_csv(const std::string& text,
                          const std::string& region_id);

/// Inverse of area_json. Throws ParseError / SchemaError.
AreaReport parse_area_json(const std::string& text);

}  // namespace lulc
