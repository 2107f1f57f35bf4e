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
#include "lulc/bands.hpp"

#include <cctype>
#include <set>
#include <string_view>

#include "lulc/errors.hpp"
#include "text_util.hpp"

namespace lulc {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

/// Consumes a '-', or a UTF-8 en/em dash, at position i. Returns the new
/// position, or i itself when no separator is present.
std::size_t skip_dash(std::string_view s, std::size_t i) {
    if (i < s.size() && s[i] == '-') return i + 1;
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(s[i + 2]) == 0x93 ||   // en dash
         static_cast<unsigned char>(s[i + 2]) == 0x94)) {  // em dash
        return i + 3;
    }
    return i;
}

}  // namespace

Hierarchy default_hierarchy() {
    return {
        {"Crop", {"Wheat", "Canola", "Pulses", "Misc Crop"}},
        {"Agri Land", {"Crop", "Pasture"}},
    };
}

std::string derive_class_label(const std::string& name) {
    std::string_view s(name);
    if (!s.starts_with("Band")) return name;
    std::size_t i = 4;
    std::size_t mark = i;
    while (i < s.size() && is_space(s[i])) ++i;
    if (i == mark) return name;  // "Bandit" is not a prefix
    mark = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == mark) return name;  // no band number
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t after_dash = skip_dash(s, i);
    if (after_dash == i) return name;  // no separator
    i = after_dash;
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) return name;  // nothing after the separator
    return detail::trim(s.substr(i));
}

std::vector<std::string> BandSet::class_labels() const {
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const auto& band : bands) {
        auto key = fold_name(band.class_label);
        if (seen.insert(key).second) labels.push_back(band.class_label);
    }
    return labels;
}

Hierarchy parse_hierarchy_csv(const std::string& text) {
    auto lines = detail::split_lines(text);
    if (lines.empty())
        throw CsvError("hierarchy file is empty; expected header category,member");
    auto header = lines[0];
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    if (detail::trim_view(header) != "category,member")
        throw CsvError("hierarchy header must be category,member, got \"" +
                       std::string(header) + "\"");

    Hierarchy hierarchy;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim_view(lines[i]).empty()) continue;
        auto fields = detail::split_csv(lines[i]);
        if (fields.size() != 2)
            throw CsvError("hierarchy line " + std::to_string(i + 1) +
                           ": expected 2 fields, got " +
                           std::to_string(fields.size()));
        auto category = detail::trim(fields[0]);
        auto member = detail::trim(fields[1]);
        if (category.empty() || member.empty())
            throw CsvError("hierarchy line " + std::to_string(i + 1) +
                           ": empty category or member");
        if (!seen.insert({fold_name(category), fold_name(member)}).second)
            throw CsvError("hierarchy line " + std::to_string(i + 1) +
                           ": duplicate edge " + category + " -> " + member);
        hierarchy[category].push_back(member);
    }
    return hierarchy;
}

void validate_hierarchy(const Hierarchy& hierarchy, const BandSet& bands) {
    std::set<std::string> classes;
    for (const auto& band : bands.bands) classes.insert(fold_name(band.class_label));
    std::set<std::string> categories;
    for (const auto& [category, members] : hierarchy)
        categories.insert(fold_name(category));

    for (const auto& [category, members] : hierarchy) {
        for (const auto& member : members) {
            auto key = fold_name(member);
            if (!classes.count(key) && !categories.count(key))
                throw SchemaError("hierarchy member \"" + member +
                                  "\" of category \"" + category +
                                  "\" is neither a band class nor a category");
        }
    }

    // Cycle check over the category -> category edges (DFS, three colors).
    enum class Color { white, gray, black };
    std::map<std::string, Color> color;
    for (const auto& [category, members] : hierarchy)
        color[fold_name(category)] = Color::white;

    auto visit = [&](auto&& self, const std::string& node) -> void {
        color[node] = Color::gray;
        for (const auto& [category, members] : hierarchy) {
            if (fold_name(category) != node) continue;
            for (const auto& member : members) {
                auto key = fold_name(member);
                auto it = color.find(key);
                if (it == color.end()) continue;  // plain class, no edges
                if (it->second == Color::gray)
                    throw SchemaError("hierarchy cycle through category \"" +
                                      member + "\"");
                if (it->second == Color::white) self(self, key);
            }
        }
        color[node] = Color::black;
    };
    for (const auto& [category, members] : hierarchy) {
        auto key = fold_name(category);
        if (color[key] == Color::white) visit(visit, key);
    }
}

std::string fold_name(const std::string& s) {
    return detail::to_lower(detail::trim_view(s));
}

}  // namespace lulc
