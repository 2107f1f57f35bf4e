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
#include "lulc/zonal.hpp"

#include <cmath>
#include <json.hpp>
#include <map>
#include <set>

#include "lulc/errors.hpp"
#include "text_util.hpp"

namespace lulc {

namespace {

using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kKmPerDegreeLongitude = 111.320;  // at the equator
constexpr double kKmPerDegreeLatitude = 110.574;

std::optional<double> find_area(
    const std::vector<std::pair<std::string, double>>& entries,
    const std::string& name) {
    auto key = fold_name(name);
    for (const auto& [entry_name, area] : entries)
        if (fold_name(entry_name) == key) return area;
    return std::nullopt;
}

}  // namespace

// ---- pixel geometry ------------------------------------------------------

Point pixel_center_geo(const GeoTransform& t, std::uint32_t row,
                       std::uint32_t col) {
    return {t.origin_x + (col + 0.5) * t.scale_x,
            t.origin_y - (row + 0.5) * t.scale_y};
}

bool point_in_region(Point p, const Region& r) {
    bool inside = false;
    for (const auto& ring : r.rings) {
        std::size_t n = ring.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Point& a = ring[i];
            const Point& b = ring[i + 1];
            // Half-open in y: each edge owns [min(ay,by), max(ay,by)) so a
            // ray through a vertex counts exactly one of its two edges.
            if ((a.y > p.y) != (b.y > p.y)) {
                double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if (p.x < x_cross) inside = !inside;
            }
        }
    }
    return inside;
}

BitGrid rasterize_region(const Region& r, const GeoTransform& t,
                         std::uint32_t width, std::uint32_t height) {
    BitGrid grid(width, height);
    for (std::uint32_t row = 0; row < height; ++row)
        for (std::uint32_t col = 0; col < width; ++col)
            grid.set(row, col, point_in_region(pixel_center_geo(t, row, col), r));
    return grid;
}

double pixel_area_km2(const GeoTransform& t, std::uint32_t row,
                      const AreaMode& mode) {
    switch (mode.kind) {
        case AreaModeKind::fixed:
            if (!mode.fixed_km2)
                throw MissingFixedValue(
                    "fixed area mode needs a per-pixel km2 value");
            return *mode.fixed_km2;
        case AreaModeKind::projected:
            // Scales are meters per pixel.
            return t.scale_x * t.scale_y / 1e6;
        case AreaModeKind::geographic: {
            // Scales are degrees; east-west footprint shrinks with latitude.
            double lat_deg = t.origin_y - (row + 0.5) * t.scale_y;
            double east_west = t.scale_x * kKmPerDegreeLongitude *
                               std::cos(lat_deg * kPi / 180.0);
            double north_south = t.scale_y * kKmPerDegreeLatitude;
            return east_west * north_south;
        }
    }
    throw ConfigError("unknown area mode");
}

// ---- area reports --------------------------------------------------------

std::optional<double> AreaReport::class_area(const std::string& name) const {
    return find_area(per_class, name);
}

std::optional<double> AreaReport::category_area(const std::string& name) const {
    return find_area(per_category, name);
}

std::optional<double> AreaReport::class_or_category_area(
    const std::string& name) const {
    if (auto area = class_area(name)) return area;
    return category_area(name);
}

AreaReport area_report(const LabelField& field, const BandSet& bands,
                       const GeoTransform& t, const AreaMode& mode,
                       const std::string& region_id) {
    if (field.band_count != bands.size())
        throw DimensionMismatch("label field was built for " +
                                std::to_string(field.band_count) +
                                " bands, band set has " +
                                std::to_string(bands.size()));

    AreaReport report;
    report.region_id = region_id;

    std::vector<double> band_area(field.band_count, 0.0);
    double unclassified = 0.0;
    double nodata = 0.0;

    bool row_invariant = mode.kind != AreaModeKind::geographic;
    if (row_invariant) {
        // Every pixel has the same footprint: areas are exact products of
        // the histogram counts.
        double unit = pixel_area_km2(t, 0, mode);
        for (std::size_t b = 0; b < field.band_count; ++b)
            band_area[b] = static_cast<double>(field.histogram[b]) * unit;
        unclassified = static_cast<double>(field.unclassified_pixels()) * unit;
        nodata = static_cast<double>(field.nodata_pixels()) * unit;
    } else {
        // Count per row, then weight by that row's footprint.
        std::vector<std::size_t> counts(field.band_count + 2);
        for (std::uint32_t row = 0; row < field.height; ++row) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::uint32_t col = 0; col < field.width; ++col) {
                Label label = field.at(row, col);
                if (label == kUnclassified) ++counts[field.band_count];
                else if (label == kNodata) ++counts[field.band_count + 1];
                else ++counts[static_cast<std::size_t>(label)];
            }
            double row_area = pixel_area_km2(t, row, mode);
            for (std::size_t b = 0; b < field.band_count; ++b)
                band_area[b] += static_cast<double>(counts[b]) * row_area;
            unclassified +=
                static_cast<double>(counts[field.band_count]) * row_area;
            nodata +=
                static_cast<double>(counts[field.band_count + 1]) * row_area;
        }
    }

    for (std::size_t b = 0; b < field.band_count; ++b)
        report.per_band.emplace_back(bands.bands[b].name, band_area[b]);

    // Classes in first-band order; a class sums all bands carrying it.
    std::map<std::string, std::size_t> class_slot;
    for (std::size_t b = 0; b < field.band_count; ++b) {
        auto key = fold_name(bands.bands[b].class_label);
        auto it = class_slot.find(key);
        if (it == class_slot.end()) {
            class_slot.emplace(key, report.per_class.size());
            report.per_class.emplace_back(bands.bands[b].class_label,
                                          band_area[b]);
        } else {
            report.per_class[it->second].second += band_area[b];
        }
    }

    // Categories resolve recursively; classes shadow same-named categories,
    // and members matching nothing (the built-in hierarchy on a small band
    // set) contribute zero.
    std::map<std::string, double> category_memo;
    auto resolve = [&](auto&& self, const std::string& category) -> double {
        auto key = fold_name(category);
        auto memo = category_memo.find(key);
        if (memo != category_memo.end()) return memo->second;
        category_memo[key] = 0.0;  // cycle guard: a re-entry reads 0
        double total = 0.0;
        for (const auto& [name, members] : bands.hierarchy) {
            if (fold_name(name) != key) continue;
            for (const auto& member : members) {
                if (auto area = find_area(report.per_class, member)) {
                    total += *area;
                } else {
                    bool is_category = false;
                    for (const auto& [other, _] : bands.hierarchy)
                        if (fold_name(other) == fold_name(member))
                            is_category = true;
                    if (is_category) total += self(self, member);
                }
            }
        }
        category_memo[key] = total;
        return total;
    };
    for (const auto& [category, members] : bands.hierarchy)
        report.per_category.emplace_back(category, resolve(resolve, category));

    report.unclassified_km2 = unclassified;
    report.nodata_km2 = nodata;
    double classified = 0.0;
    for (const auto& [name, area] : report.per_class) classified += area;
    report.total_km2 = classified + unclassified + nodata;
    return report;
}

// ---- census comparison ---------------------------------------------------

std::string to_string(RowStatus status) {
    switch (status) {
        case RowStatus::compared: return "compared";
        case RowStatus::no_census_reference: return "no-census-reference";
        case RowStatus::no_computed_value: return "no-computed-value";
    }
    return "?";
}

ComparisonReport compare(const AreaReport& report, const CensusTable& census,
                         const std::string& region_id) {
    ComparisonReport out;
    out.region_id = region_id;

    std::set<std::string> covered;
    for (const CensusRecord* record : census.for_region(region_id)) {
        ComparisonRow row;
        row.class_name = record->class_name;
        row.census_km2 = record->area_km2;
        if (auto computed = report.class_or_category_area(record->class_name)) {
            row.computed_km2 = computed;
            row.abs_error_km2 = *computed - record->area_km2;
            if (record->area_km2 > 0)
                row.rel_error = std::abs(*row.abs_error_km2) / record->area_km2;
            row.status = RowStatus::compared;
            out.objective_km2 += std::abs(*row.abs_error_km2);
        } else {
            row.status = RowStatus::no_computed_value;
        }
        covered.insert(fold_name(record->class_name));
        out.rows.push_back(std::move(row));
    }

    // Computed classes the census never mentions, in band order.
    for (const auto& [name, area] : report.per_class) {
        if (covered.count(fold_name(name))) continue;
        ComparisonRow row;
        row.class_name = name;
        row.computed_km2 = area;
        row.status = RowStatus::no_census_reference;
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---- categorical downscale -----------------------------------------------

LabelField aggregate_categorical(const LabelField& field, int factor,
                                 AggregationRule rule) {
    if (factor < 2)
        throw BadFactor("aggregation factor must be at least 2, got " +
                        std::to_string(factor));
    auto f = static_cast<std::uint32_t>(factor);
    std::uint32_t out_w = (field.width + f - 1) / f;
    std::uint32_t out_h = (field.height + f - 1) / f;

    LabelField out(out_w, out_h, field.band_count, kNodata);
    std::vector<std::size_t> counts(field.band_count + 1);

    for (std::uint32_t br = 0; br < out_h; ++br) {
        for (std::uint32_t bc = 0; bc < out_w; ++bc) {
            std::uint32_t r0 = br * f, c0 = bc * f;
            std::uint32_t r1 = std::min(r0 + f, field.height);
            std::uint32_t c1 = std::min(c0 + f, field.width);

            Label result;
            if (rule == AggregationRule::central) {
                // The (f/2, f/2) cell of the block, clipped at the edges.
                std::uint32_t rr = std::min(r0 + f / 2, r1 - 1);
                std::uint32_t cc = std::min(c0 + f / 2, c1 - 1);
                result = field.at(rr, cc);
            } else {
                // Majority among non-NODATA cells; bucket order encodes the
                // tie-break (bands by index, then UNCLASSIFIED).
                std::fill(counts.begin(), counts.end(), 0);
                std::size_t participating = 0;
                for (std::uint32_t r = r0; r < r1; ++r) {
                    for (std::uint32_t c = c0; c < c1; ++c) {
                        Label label = field.at(r, c);
                        if (label == kNodata) continue;
                        std::size_t bucket = label == kUnclassified
                                                 ? field.band_count
                                                 : static_cast<std::size_t>(label);
                        ++counts[bucket];
                        ++participating;
                    }
                }
                if (participating == 0) {
                    result = kNodata;
                } else {
                    std::size_t best = 0;
                    for (std::size_t i = 1; i < counts.size(); ++i)
                        if (counts[i] > counts[best]) best = i;
                    result = best == field.band_count
                                 ? kUnclassified
                                 : static_cast<Label>(best);
                }
            }
            out.at(br, bc) = result;
        }
    }
    out.recount();
    return out;
}

// ---- serialization -------------------------------------------------------

namespace {

std::string csv_area(const std::optional<double>& v) {
    return v ? detail::fmt_fixed(*v, 2) : std::string();
}

ordered_json json_opt(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json entries_json(
    const std::vector<std::pair<std::string, double>>& entries) {
    auto arr = ordered_json::array();
    for (const auto& [name, area] : entries)
        arr.push_back({{"name", name}, {"area_km2", area}});
    return arr;
}

}  // namespace

std::string comparison_csv(const ComparisonReport& report) {
    std::string out = "class,census_km2,computed_km2,abs_error_km2,rel_error,status\n";
    for (const auto& row : report.rows) {
        out += row.class_name;
        out += ',' + csv_area(row.census_km2);
        out += ',' + csv_area(row.computed_km2);
        out += ',' + csv_area(row.abs_error_km2);
        out += ',';
        if (row.rel_error) out += detail::fmt_fixed(*row.rel_error, 4);
        out += ',' + to_string(row.status) + '\n';
    }
    return out;
}

std::string comparison_json(const ComparisonReport& report) {
    ordered_json doc;
    doc["region_id"] = report.region_id;
    auto rows = ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"class", row.class_name},
                        {"census_km2", json_opt(row.census_km2)},
                        {"computed_km2", json_opt(row.computed_km2)},
                        {"abs_error_km2", json_opt(row.abs_error_km2)},
                        {"rel_error", json_opt(row.rel_error)},
                        {"status", to_string(row.status)}});
    }
    doc["rows"] = std::move(rows);
    doc["objective_km2"] = report.objective_km2;
    return doc.dump(2) + "\n";
}

std::string area_csv(const AreaReport& report) {
    std::string out = "kind,name,area_km2\n";
    auto line = [&out](const char* kind, const std::string& name, double area) {
        out += kind;
        out += ',' + name + ',' + detail::fmt_fixed(area, 2) + '\n';
    };
    for (const auto& [name, area] : report.per_band) line("band", name, area);
    for (const auto& [name, area] : report.per_class) line("class", name, area);
    for (const auto& [name, area] : report.per_category)
        line("category", name, area);
    line("unclassified", "", report.unclassified_km2);
    line("nodata", "", report.nodata_km2);
    line("total", "", report.total_km2);
    return out;
}

std::string area_json(const AreaReport& report) {
    ordered_json doc;
    doc["region_id"] = report.region_id;
    doc["per_band"] = entries_json(report.per_band);
    doc["per_class"] = entries_json(report.per_class);
    doc["per_category"] = entries_json(report.per_category);
    doc["unclassified_km2"] = report.unclassified_km2;
    doc["nodata_km2"] = report.nodata_km2;
    doc["total_km2"] = report.total_km2;
    return doc.dump(2) + "\n";
}

AreaReport parse_area_csv(const std::string& text,
                          const std::string& region_id) {
    auto lines = detail::split_lines(text);
    if (lines.empty())
        throw CsvError("area report is empty; expected header kind,name,area_km2");
    auto header = lines[0];
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    if (detail::trim_view(header) != "kind,name,area_km2")
        throw CsvError("area report header must be kind,name,area_km2, got \"" +
                       std::string(header) + "\"");

    AreaReport report;
    report.region_id = region_id;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim_view(lines[i]).empty()) continue;
        auto fields = detail::split_csv(lines[i]);
        if (fields.size() != 3)
            throw CsvError("area report line " + std::to_string(i + 1) +
                           ": expected 3 fields");
        auto kind = detail::trim(fields[0]);
        auto name = detail::trim(fields[1]);
        auto area = detail::parse_double(fields[2]);
        if (!area)
            throw CsvError("area report line " + std::to_string(i + 1) +
                           ": area is not a number");
        if (kind == "band") report.per_band.emplace_back(name, *area);
        else if (kind == "class") report.per_class.emplace_back(name, *area);
        else if (kind == "category") report.per_category.emplace_back(name, *area);
        else if (kind == "unclassified") report.unclassified_km2 = *area;
        else if (kind == "nodata") report.nodata_km2 = *area;
        else if (kind == "total") report.total_km2 = *area;
        else
            throw CsvError("area report line " + std::to_string(i + 1) +
                           ": unknown kind \"" + kind + "\"");
        if ((kind == "band" || kind == "class" || kind == "category") &&
            name.empty())
            throw CsvError("area report line " + std::to_string(i + 1) +
                           ": " + kind + " row needs a name");
    }
    return report;
}

AreaReport parse_area_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!doc.is_object()) throw SchemaError("area report root is not an object");
    auto id = doc.find("region_id");
    if (id == doc.end() || !id->is_string())
        throw SchemaError("area report has no \"region_id\" string");

    AreaReport report;
    report.region_id = id->get<std::string>();
    auto read_entries = [&doc](const char* key,
                               std::vector<std::pair<std::string, double>>& out) {
        auto it = doc.find(key);
        if (it == doc.end()) return;
        if (!it->is_array())
            throw SchemaError(std::string("area report \"") + key +
                              "\" is not an array");
        for (const auto& entry : *it) {
            if (!entry.is_object() || !entry.contains("name") ||
                !entry.contains("area_km2") || !entry["name"].is_string() ||
                !entry["area_km2"].is_number())
                throw SchemaError(std::string("area report \"") + key +
                                  "\" entry is not {name, area_km2}");
            out.emplace_back(entry["name"].get<std::string>(),
                             entry["area_km2"].get<double>());
        }
    };
    read_entries("per_band", report.per_band);
    read_entries("per_class", report.per_class);
    read_entries("per_category", report.per_category);
    auto scalar = [&doc](const char* key, double& out) {
        auto it = doc.find(key);
        if (it == doc.end()) return;
        if (!it->is_number())
            throw SchemaError(std::string("area report \"") + key +
                              "\" is not a number");
        out = it->get<double>();
    };
    scalar("unclassified_km2", report.unclassified_km2);
    scalar("nodata_km2", report.nodata_km2);
    scalar("total_km2", report.total_km2);
    return report;
}

}  // namespace lulc
