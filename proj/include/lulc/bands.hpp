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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lulc/raster.hpp"

namespace lulc {

/// One color range: a named RGB center plus a scalar tolerance, contributing
/// to one crop/cover class. Several bands (seasonal variants of the same
/// crop) may share a class label.
struct ColorBand {
    std::string name;
    std::optional<std::string> comment;
    Rgb color;
    int tolerance = 0;  // 0..255, per-channel box half-width
    std::string class_label;

    friend bool operator==(const ColorBand&, const ColorBand&) = default;
};

/// Category -> member names. Members are class labels or other categories.
using Hierarchy = std::map<std::string, std::vector<std::string>>;

/// Built-in grouping used when no hierarchy file is supplied:
/// Crop covers the four crop classes, Agri Land covers Crop plus Pasture.
Hierarchy default_hierarchy();

/// "Band 3 - Wheat" -> "Wheat". Names without a numbered band prefix pass
/// through unchanged. Accepts '-', en dash, and em dash as the separator.
std::string derive_class_label(const std::string& name);

/// Ordered band list plus the class/category hierarchy. Band order is
/// significant: it is the classifier's tie-break order and is preserved
/// across parse/serialize.
struct BandSet {
    std::vector<ColorBand> bands;
    Hierarchy hierarchy;

    bool empty() const { return bands.empty(); }
    std::size_t size() const { return bands.size(); }

    /// Distinct class labels in order of the first band that carries them.
    std::vector<std::string> class_labels() const;

    friend bool operator==(const BandSet&, const BandSet&) = default;
};

/// Parses a hierarchy file: CSV with header `category,member`, one row per
/// membership edge. Throws CsvError on malformed input.
Hierarchy parse_hierarchy_csv(const std::string& text);

/// Validates an explicitly supplied hierarchy against a band set: every
/// member must resolve to some band's class label or to another category,
/// and the category graph must be acyclic. Throws SchemaError.
/// (The built-in default is exempt from the membership check so that small
/// band sets still parse.)
void validate_hierarchy(const Hierarchy& hierarchy, const BandSet& bands);

/// Case-insensitive, whitespace-trimmed name folding used wherever class
/// names from different sources are matched against each other.
std::string fold_name(const std::string& s);

}  // namespace lulc
