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
#include "lulc/census.hpp"

#include <set>
#include <utility>

#include "lulc/bands.hpp"
#include "lulc/errors.hpp"
#include "text_util.hpp"

namespace lulc {

std::optional<double> CensusTable::lookup(const std::string& region_id,
                                          const std::string& class_name) const {
    auto key = fold_name(class_name);
    for (const auto& record : records)
        if (record.region_id == region_id && fold_name(record.class_name) == key)
            return record.area_km2;
    return std::nullopt;
}

std::vector<const CensusRecord*> CensusTable::for_region(
    const std::string& region_id) const {
    std::vector<const CensusRecord*> out;
    for (const auto& record : records)
        if (record.region_id == region_id) out.push_back(&record);
    return out;
}

CensusTable load_census_csv(const std::string& text) {
    auto lines = detail::split_lines(text);
    if (lines.empty())
        throw CsvError("census file is empty; expected header region,class,area_km2");
    auto header = lines[0];
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    if (detail::trim_view(header) != "region,class,area_km2")
        throw CsvError("census header must be region,class,area_km2, got \"" +
                       std::string(header) + "\"");

    CensusTable table;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim_view(lines[i]).empty()) continue;
        auto fields = detail::split_csv(lines[i]);
        if (fields.size() != 3)
            throw CsvError("census line " + std::to_string(i + 1) +
                           ": expected 3 fields, got " +
                           std::to_string(fields.size()));
        CensusRecord record;
        record.region_id = detail::trim(fields[0]);
        record.class_name = detail::trim(fields[1]);
        if (record.region_id.empty() || record.class_name.empty())
            throw CsvError("census line " + std::to_string(i + 1) +
                           ": empty region or class");
        auto area = detail::parse_double(fields[2]);
        if (!area)
            throw CsvError("census line " + std::to_string(i + 1) +
                           ": area \"" + std::string(fields[2]) +
                           "\" is not a number");
        if (*area < 0)
            throw CsvError("census line " + std::to_string(i + 1) +
                           ": negative area");
        record.area_km2 = *area;
        if (!seen.insert({record.region_id, fold_name(record.class_name)}).second)
            throw CsvError("census line " + std::to_string(i + 1) +
                           ": duplicate key (" + record.region_id + ", " +
                           record.class_name + ")");
        table.records.push_back(std::move(record));
    }
    return table;
}

}  // namespace lulc
