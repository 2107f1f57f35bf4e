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

#include "lulc/census.hpp"
#include "lulc/classify.hpp"
#include "lulc/raster.hpp"
#include "lulc/zonal.hpp"

namespace lulc {

struct CalibrationConfig {
    double epsilon_rel = 0.10;  // per-class relative stopping tolerance
    int max_passes = 50;
    std::vector<int> step_schedule = {16, 8, 4, 2, 1};
    bool recenter = false;  // move band centers to matched-pixel medians
    int tolerance_min = 0;
    int tolerance_max = 255;
};

/// One accepted tolerance move.
struct TraceEntry {
    int pass = 0;  // 1-based
    int band = 0;
    int old_tolerance = 0;
    int new_tolerance = 0;
    double objective_km2 = 0.0;  // after the move
};

struct CalibrationResult {
    BandSet bands;
    std::vector<TraceEntry> trace;
    bool converged = false;
    ComparisonReport final_report;
};

/// classify → area_report → compare; returns the comparison objective
/// (Σ |computed − census| over classes present in both sides).
double objective(const BandSet& bands, const RasterImage& img,
                 const BitGrid* mask, const CensusTable& census,
                 const std::string& region_id, const AreaMode& area_mode);

/// Cyclic coordinate descent over integer band tolerances. Each pass
/// sweeps bands in order; per band, per step in the schedule, tolerance ± s
/// (clamped to bounds) is evaluated and a candidate is accepted only when
/// it strictly decreases the objective, so the trace is strictly
/// decreasing. When cfg.recenter, after each pass every band with matched
/// pixels has its center moved to the per-channel median of those pixels —
/// kept only if the objective does not increase, else rolled back.
/// Terminates when every censused class is within epsilon_rel (converged),
/// when a pass makes no move, or at max_passes. Deterministic.
///
/// Throws NoBands (empty band set), ConfigError (bad epsilon, passes,
/// schedule, or bounds).
CalibrationResult calibrate_tolerances(const RasterImage& img,
                                       const BitGrid* mask,
                                       const BandSet& bands,
                                       const CensusTable& census,
                                       const std::string& region_id,
                                       const AreaMode& area_mode,
                                       const CalibrationConfig& cfg = {});

/// CSV with header pass,band,old_tol,new_tol,objective_km2.
std::string trace_csv(const std::vector<TraceEntry>& trace);

}  // namespace lulc
