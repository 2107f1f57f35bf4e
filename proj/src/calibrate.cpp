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
#include "lulc/calibrate.hpp"

#include <algorithm>

#include "lulc/errors.hpp"
#include "text_util.hpp"

namespace lulc {

namespace {

void validate_config(const CalibrationConfig& cfg) {
    if (!(cfg.epsilon_rel > 0.0 && cfg.epsilon_rel < 1.0))
        throw ConfigError("epsilon_rel must be in (0, 1)");
    if (cfg.max_passes < 1) throw ConfigError("max_passes must be at least 1");
    if (cfg.step_schedule.empty())
        throw ConfigError("step schedule must not be empty");
    for (std::size_t i = 0; i < cfg.step_schedule.size(); ++i) {
        if (cfg.step_schedule[i] <= 0)
            throw ConfigError("step schedule entries must be positive");
        if (i > 0 && cfg.step_schedule[i] >= cfg.step_schedule[i - 1])
            throw ConfigError("step schedule must be strictly descending");
    }
    if (cfg.tolerance_min < 0 || cfg.tolerance_max > 255 ||
        cfg.tolerance_min > cfg.tolerance_max)
        throw ConfigError("tolerance bounds must satisfy 0 <= min <= max <= 255");
}

/// Convergence: every class the census knows for this region is within the
/// relative tolerance — zero-census classes must compute exactly zero, and
/// classes the band set cannot produce block convergence.
bool within_tolerance(const ComparisonReport& report, double epsilon_rel) {
    for (const auto& row : report.rows) {
        if (!row.census_km2) continue;
        if (!row.computed_km2) return false;
        if (*row.census_km2 > 0) {
            if (!row.rel_error || *row.rel_error > epsilon_rel) return false;
        } else if (*row.computed_km2 != 0.0) {
            return false;
        }
    }
    return true;
}

/// Lower median of each channel over the band's assigned pixels.
std::optional<Rgb> assigned_median(const RasterImage& img,
                                   const LabelField& field, Label band) {
    std::vector<std::uint8_t> r, g, b;
    for (std::size_t i = 0; i < field.labels.size(); ++i) {
        if (field.labels[i] != band) continue;
        r.push_back(img.pixels[i].r);
        g.push_back(img.pixels[i].g);
        b.push_back(img.pixels[i].b);
    }
    if (r.empty()) return std::nullopt;
    auto lower_median = [](std::vector<std::uint8_t>& v) {
        auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
        std::nth_element(v.begin(), mid, v.end());
        return *mid;
    };
    return Rgb{lower_median(r), lower_median(g), lower_median(b)};
}

}  // namespace

double objective(const BandSet& bands, const RasterImage& img,
                 const BitGrid* mask, const CensusTable& census,
                 const std::string& region_id, const AreaMode& area_mode) {
    LabelField field = classify_raster(img, bands, mask);
    AreaReport report =
        area_report(field, bands, img.transform, area_mode, region_id);
    return compare(report, census, region_id).objective_km2;
}

CalibrationResult calibrate_tolerances(const RasterImage& img,
                                       const BitGrid* mask,
                                       const BandSet& bands,
                                       const CensusTable& census,
                                       const std::string& region_id,
                                       const AreaMode& area_mode,
                                       const CalibrationConfig& cfg) {
    if (bands.empty()) throw NoBands("calibration needs at least one band");
    validate_config(cfg);

    CalibrationResult result;
    result.bands = bands;

    auto report_for = [&](const BandSet& b) {
        LabelField field = classify_raster(img, b, mask);
        return compare(area_report(field, b, img.transform, area_mode, region_id),
                       census, region_id);
    };
    auto objective_for = [&](const BandSet& b) {
        return report_for(b).objective_km2;
    };

    ComparisonReport report = report_for(result.bands);
    double current = report.objective_km2;
    bool converged = within_tolerance(report, cfg.epsilon_rel);

    int pass = 0;
    while (!converged && pass < cfg.max_passes) {
        ++pass;
        bool moved = false;

        for (std::size_t band = 0; band < result.bands.size(); ++band) {
            for (int step : cfg.step_schedule) {
                int old_tol = result.bands.bands[band].tolerance;
                int best_tol = old_tol;
                double best_obj = current;
                // Try +step first so it wins an exact tie with −step.
                for (int candidate :
                     {std::clamp(old_tol + step, cfg.tolerance_min,
                                 cfg.tolerance_max),
                      std::clamp(old_tol - step, cfg.tolerance_min,
                                 cfg.tolerance_max)}) {
                    if (candidate == old_tol || candidate == best_tol) continue;
                    result.bands.bands[band].tolerance = candidate;
                    double obj = objective_for(result.bands);
                    if (obj < best_obj) {
                        best_obj = obj;
                        best_tol = candidate;
                    }
                }
                result.bands.bands[band].tolerance = best_tol;
                if (best_tol != old_tol) {
                    current = best_obj;
                    moved = true;
                    result.trace.push_back({pass, static_cast<int>(band),
                                            old_tol, best_tol, best_obj});
                }
            }
        }

        if (cfg.recenter) {
            // Collective recenter to assigned-pixel medians, rolled back as
            // a whole if the objective worsens. Not traced.
            LabelField field = classify_raster(img, result.bands, mask);
            BandSet candidate = result.bands;
            bool changed = false;
            for (std::size_t band = 0; band < candidate.size(); ++band) {
                auto median =
                    assigned_median(img, field, static_cast<Label>(band));
                if (median && !(*median == candidate.bands[band].color)) {
                    candidate.bands[band].color = *median;
                    changed = true;
                }
            }
            if (changed) {
                double obj = objective_for(candidate);
                if (obj <= current) {
                    result.bands = std::move(candidate);
                    current = obj;
                    moved = true;
                }
            }
        }

        report = report_for(result.bands);
        current = report.objective_km2;
        converged = within_tolerance(report, cfg.epsilon_rel);
        if (!moved) break;  // a full pass with no change cannot improve
    }

    result.converged = converged;
    result.final_report = std::move(report);
    return result;
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
    std::string out = "pass,band,old_tol,new_tol,objective_km2\n";
    for (const auto& entry : trace) {
        out += std::to_string(entry.pass) + ',' + std::to_string(entry.band) +
               ',' + std::to_string(entry.old_tolerance) + ',' +
               std::to_string(entry.new_tolerance) + ',' +
               detail::fmt_fixed(entry.objective_km2, 6) + '\n';
    }
    return out;
}

}  // namespace lulc
