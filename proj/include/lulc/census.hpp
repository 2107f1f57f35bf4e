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
#include <vector>

namespace lulc {

struct CensusRecord {
    std::string region_id;
    std::string class_name;  // stored trimmed
    double area_km2 = 0.0;
};

/// Reference areas per (region, class), loaded from a census CSV. Class
/// names match case-insensitively; region ids match exactly.
struct CensusTable {
    std::vector<CensusRecord> records;

    bool empty() const { return records.empty(); }

    std::optional<double> lookup(const std::string& region_id,
                                 const std::string& class_name) const;

    /// Records for one region, in file order.
    std::vector<const CensusRecord*> for_region(
        const std::string& region_id) const;
};

/// Parses a CSV with header `region,class,area_km2`. No quoting; class
/// names are trimmed. Throws CsvError on wrong column counts, non-numeric
/// or negative areas, and duplicate (region, class) keys.
CensusTable load_census_csv(const std::string& text);

}  // namespace lulc
