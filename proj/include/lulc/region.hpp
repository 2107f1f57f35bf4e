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

namespace lulc {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// A polygonal region: one or more coordinate rings. Every ring is closed
/// (first point equals last) and has at least 4 points. Holes are just
/// additional rings; containment uses the even-odd rule, so orientation
/// does not matter.
struct Region {
    std::string id;
    std::vector<std::vector<Point>> rings;

    friend bool operator==(const Region&, const Region&) = default;
};

}  // namespace lulc
