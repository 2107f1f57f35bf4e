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

// lulc — land-use/land-cover classification toolkit.
//
// Subcommands: info, classify, zonal, compare, calibrate, fetch, aggregate.
// Exit codes: 0 ok, 2 parse failure, 3 configuration failure,
// 4 calibration did not converge, 5 network failure.

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "lulc/calibrate.hpp"
#include "lulc/census.hpp"
#include "lulc/classify.hpp"
#include "lulc/errors.hpp"
#include "lulc/geojson.hpp"
#include "lulc/geotiff.hpp"
#include "lulc/io.hpp"
#include "lulc/rangelist.hpp"
#include "lulc/shapefile.hpp"
#include "lulc/wms.hpp"
#include "lulc/zonal.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt_shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

lulc::RasterImage load_raster(const fs::path& path) {
    return lulc::read_geotiff(lulc::read_file(path));
}

lulc::BandSet load_bands(const fs::path& ranges_path,
                         const std::optional<fs::path>& hierarchy_path) {
    auto bands = lulc::parse_rangelist_xml(lulc::read_text_file(ranges_path));
    if (hierarchy_path) {
        bands.hierarchy =
            lulc::parse_hierarchy_csv(lulc::read_text_file(*hierarchy_path));
        lulc::validate_hierarchy(bands.hierarchy, bands);
    }
    return bands;
}

std::vector<lulc::Region> load_boundary(const fs::path& path) {
    if (path.extension() == ".shp")
        return lulc::read_shapefile_polygons(lulc::read_file(path));
    return lulc::read_geojson_polygons(lulc::read_text_file(path));
}

/// Picks one region: by id when it matches, by index otherwise (an explicit
/// id then renames the indexed region, covering shapefiles whose records
/// carry no names). A single-region boundary needs no selector.
lulc::Region select_region(std::vector<lulc::Region> regions,
                           const std::optional<std::string>& id,
                           const std::optional<int>& index) {
    if (regions.empty()) throw lulc::ConfigError("boundary has no regions");
    if (index) {
        if (*index < 0 || static_cast<std::size_t>(*index) >= regions.size())
            throw lulc::ConfigError(
                "region index " + std::to_string(*index) + " out of range (" +
                std::to_string(regions.size()) + " regions)");
        auto region = std::move(regions[static_cast<std::size_t>(*index)]);
        if (id) region.id = *id;
        return region;
    }
    if (id) {
        for (auto& region : regions)
            if (region.id == *id) return std::move(region);
        throw lulc::ConfigError("no region with id \"" + *id +
                                "\"; use --region-index to pick by position");
    }
    if (regions.size() == 1) return std::move(regions[0]);
    throw lulc::ConfigError("boundary has " + std::to_string(regions.size()) +
                            " regions; pick one with --region-id or "
                            "--region-index");
}

lulc::AreaMode resolve_area_mode(const std::string& mode_name,
                                 const std::optional<double>& pixel_area) {
    if (pixel_area && *pixel_area <= 0)
        throw lulc::ConfigError("--pixel-area must be positive");
    if (mode_name.empty()) {
        // --pixel-area alone implies fixed mode.
        if (pixel_area) return lulc::AreaMode::fixed(*pixel_area);
        return lulc::AreaMode::projected();
    }
    if (mode_name == "fixed") {
        if (!pixel_area)
            throw lulc::ConfigError("--area-mode fixed needs --pixel-area");
        return lulc::AreaMode::fixed(*pixel_area);
    }
    if (pixel_area)
        throw lulc::ConfigError("--pixel-area conflicts with --area-mode " +
                                mode_name);
    if (mode_name == "projected") return lulc::AreaMode::projected();
    if (mode_name == "geographic") return lulc::AreaMode::geographic();
    throw lulc::ConfigError("unknown area mode \"" + mode_name + "\"");
}

std::string histogram_csv(const lulc::LabelField& field,
                          const lulc::BandSet& bands) {
    std::string out = "label,name,class,pixels\n";
    for (std::size_t b = 0; b < field.band_count; ++b) {
        out += std::to_string(b) + ',' + bands.bands[b].name + ',' +
               bands.bands[b].class_label + ',' +
               std::to_string(field.band_pixels(b)) + '\n';
    }
    out += "UNCLASSIFIED,,," + std::to_string(field.unclassified_pixels()) + '\n';
    out += "NODATA,,," + std::to_string(field.nodata_pixels()) + '\n';
    return out;
}

/// Options shared by the pipeline subcommands; each subcommand registers
/// only the ones it uses.
struct PipelineOptions {
    std::string raster;
    std::string ranges;
    std::string hierarchy;
    std::string census;
    std::string boundary;
    std::optional<std::string> region_id;
    std::optional<int> region_index;
    std::string area_mode;
    std::optional<double> pixel_area;
    std::string out_dir = ".";
};

struct SelectedRegion {
    std::optional<lulc::Region> region;
    std::string report_id = "ALL";
};

SelectedRegion resolve_region(const PipelineOptions& opt) {
    SelectedRegion sel;
    if (!opt.boundary.empty()) {
        sel.region = select_region(load_boundary(opt.boundary), opt.region_id,
                                   opt.region_index);
        sel.report_id = sel.region->id;
    } else if (opt.region_id) {
        sel.report_id = *opt.region_id;
    }
    return sel;
}

struct ClassifiedScene {
    lulc::RasterImage raster;
    lulc::BandSet bands;
    std::optional<lulc::BitGrid> mask;
    lulc::LabelField field;
    std::string report_id;
};

ClassifiedScene classify_scene(const PipelineOptions& opt) {
    ClassifiedScene scene;
    scene.raster = load_raster(opt.raster);
    scene.bands = load_bands(
        opt.ranges, opt.hierarchy.empty()
                        ? std::nullopt
                        : std::make_optional<fs::path>(opt.hierarchy));
    auto sel = resolve_region(opt);
    scene.report_id = sel.report_id;
    if (sel.region) {
        scene.mask = lulc::rasterize_region(*sel.region, scene.raster.transform,
                                            scene.raster.width,
                                            scene.raster.height);
    }
    scene.field = lulc::classify_raster(
        scene.raster, scene.bands, scene.mask ? &*scene.mask : nullptr);
    return scene;
}

void add_region_options(CLI::App* cmd, PipelineOptions& opt) {
    cmd->add_option("--boundary", opt.boundary,
                    "Region boundary file (.shp or GeoJSON)");
    cmd->add_option("--region-id", opt.region_id,
                    "Region id (selects and/or names the region)");
    cmd->add_option("--region-index", opt.region_index,
                    "Region ordinal in the boundary file (0-based)");
}

void add_area_options(CLI::App* cmd, PipelineOptions& opt) {
    cmd->add_option("--area-mode", opt.area_mode,
                    "Pixel area model: fixed, projected, geographic");
    cmd->add_option("--pixel-area", opt.pixel_area,
                    "Fixed per-pixel area in km2 (implies --area-mode fixed)");
}

int cmd_info(const std::string& raster_path) {
    auto img = load_raster(raster_path);
    std::cout << "raster: " << raster_path << "\n";
    std::cout << "dimensions: " << img.width << " x " << img.height << "\n";
    std::cout << "pixels: " << img.pixel_count() << "\n";
    std::cout << "samples: 8-bit RGBA, row-major, top-left origin\n";
    if (img.georeferenced) {
        const auto& t = img.transform;
        std::cout << "georeference: origin (" << fmt_shortest(t.origin_x)
                  << ", " << fmt_shortest(t.origin_y) << "), pixel size ("
                  << fmt_shortest(t.scale_x) << ", " << fmt_shortest(t.scale_y)
                  << "), EPSG:" << t.crs_code << "\n";
    } else {
        std::cout << "georeference: none (ungeoreferenced)\n";
    }
    return 0;
}

int cmd_classify(const PipelineOptions& opt) {
    auto scene = classify_scene(opt);
    auto rendered = lulc::render_labels(
        scene.field, scene.bands, {0x80, 0x80, 0x80}, true,
        scene.raster.georeferenced
            ? std::make_optional(scene.raster.transform)
            : std::nullopt);
    fs::create_directories(opt.out_dir);
    lulc::write_file_atomic(fs::path(opt.out_dir) / "classified.tif",
                            lulc::write_geotiff(rendered));
    lulc::write_file_atomic(fs::path(opt.out_dir) / "histogram.csv",
                            histogram_csv(scene.field, scene.bands));
    std::cout << "classified " << scene.field.pixel_count() << " pixels ("
              << scene.field.unclassified_pixels() << " unclassified, "
              << scene.field.nodata_pixels() << " nodata)\n";
    return 0;
}

int cmd_zonal(const PipelineOptions& opt) {
    auto scene = classify_scene(opt);
    auto mode = resolve_area_mode(opt.area_mode, opt.pixel_area);
    auto report = lulc::area_report(scene.field, scene.bands,
                                    scene.raster.transform, mode,
                                    scene.report_id);
    fs::create_directories(opt.out_dir);
    lulc::write_file_atomic(fs::path(opt.out_dir) / "area_report.csv",
                            lulc::area_csv(report));
    lulc::write_file_atomic(fs::path(opt.out_dir) / "area_report.json",
                            lulc::area_json(report));
    std::cout << lulc::area_csv(report);
    return 0;
}

int cmd_compare(const PipelineOptions& opt, const std::string& computed_path) {
    lulc::AreaReport report;
    if (!computed_path.empty()) {
        fs::path path(computed_path);
        if (path.extension() == ".json") {
            report = lulc::parse_area_json(lulc::read_text_file(path));
            if (opt.region_id) report.region_id = *opt.region_id;
        } else {
            report = lulc::parse_area_csv(
                lulc::read_text_file(path),
                opt.region_id.value_or("ALL"));
        }
    } else {
        if (opt.raster.empty() || opt.ranges.empty())
            throw lulc::ConfigError(
                "compare needs either --computed or --raster with --ranges");
        auto scene = classify_scene(opt);
        auto mode = resolve_area_mode(opt.area_mode, opt.pixel_area);
        report = lulc::area_report(scene.field, scene.bands,
                                   scene.raster.transform, mode,
                                   scene.report_id);
    }
    auto census = lulc::load_census_csv(lulc::read_text_file(opt.census));
    auto comparison = lulc::compare(report, census, report.region_id);
    fs::create_directories(opt.out_dir);
    lulc::write_file_atomic(fs::path(opt.out_dir) / "comparison.csv",
                            lulc::comparison_csv(comparison));
    lulc::write_file_atomic(fs::path(opt.out_dir) / "comparison.json",
                            lulc::comparison_json(comparison));
    std::cout << lulc::comparison_csv(comparison);
    return 0;
}

int cmd_calibrate(const PipelineOptions& opt, double epsilon, int max_passes,
                  bool recenter) {
    auto raster = load_raster(opt.raster);
    auto bands = load_bands(
        opt.ranges, opt.hierarchy.empty()
                        ? std::nullopt
                        : std::make_optional<fs::path>(opt.hierarchy));
    auto sel = resolve_region(opt);
    std::optional<lulc::BitGrid> mask;
    if (sel.region)
        mask = lulc::rasterize_region(*sel.region, raster.transform,
                                      raster.width, raster.height);
    auto census = lulc::load_census_csv(lulc::read_text_file(opt.census));
    auto mode = resolve_area_mode(opt.area_mode, opt.pixel_area);

    lulc::CalibrationConfig cfg;
    cfg.epsilon_rel = epsilon;
    cfg.max_passes = max_passes;
    cfg.recenter = recenter;
    auto result = lulc::calibrate_tolerances(raster, mask ? &*mask : nullptr,
                                             bands, census, sel.report_id,
                                             mode, cfg);

    fs::create_directories(opt.out_dir);
    lulc::write_file_atomic(fs::path(opt.out_dir) / "calibrated.xml",
                            lulc::serialize_rangelist_xml(result.bands));
    lulc::write_file_atomic(fs::path(opt.out_dir) / "trace.csv",
                            lulc::trace_csv(result.trace));
    lulc::write_file_atomic(fs::path(opt.out_dir) / "comparison.csv",
                            lulc::comparison_csv(result.final_report));
    lulc::write_file_atomic(fs::path(opt.out_dir) / "comparison.json",
                            lulc::comparison_json(result.final_report));

    std::cout << (result.converged ? "converged" : "did not converge") << " in "
              << result.trace.size() << " accepted moves; final objective "
              << fmt_shortest(result.final_report.objective_km2) << " km2\n";
    if (!result.converged) {
        std::cerr << "calibration did not converge within tolerance "
                  << fmt_shortest(epsilon) << "\n";
        return 4;
    }
    return 0;
}

int cmd_fetch(const lulc::WmsRequest& request, const std::string& out_path,
              const std::string& cache_dir_flag, int timeout) {
    std::string cache_dir = cache_dir_flag;
    if (cache_dir.empty()) {
        if (const char* env = std::getenv("LULC_CACHE_DIR")) cache_dir = env;
        if (cache_dir.empty()) cache_dir = ".lulc-cache";
    }
    auto url = lulc::build_getmap_url(request);
    std::cout << url << "\n";
    auto body = lulc::fetch_map(url, cache_dir, timeout);
    lulc::write_file_atomic(out_path, body);
    std::cout << "wrote " << body.size() << " bytes to " << out_path << "\n";
    return 0;
}

int cmd_aggregate(const PipelineOptions& opt, int factor,
                  const std::string& rule_name, const std::string& out_path) {
    auto scene = classify_scene(opt);
    lulc::AggregationRule rule;
    if (rule_name == "majority") rule = lulc::AggregationRule::majority;
    else if (rule_name == "central") rule = lulc::AggregationRule::central;
    else throw lulc::ConfigError("unknown aggregation rule \"" + rule_name + "\"");

    auto aggregated = lulc::aggregate_categorical(scene.field, factor, rule);
    auto transform = scene.raster.transform;
    transform.scale_x *= factor;
    transform.scale_y *= factor;
    auto rendered = lulc::render_labels(
        aggregated, scene.bands, {0x80, 0x80, 0x80}, true,
        scene.raster.georeferenced ? std::make_optional(transform)
                                   : std::nullopt);
    lulc::write_file_atomic(out_path, lulc::write_geotiff(rendered));
    std::cout << "aggregated to " << aggregated.width << " x "
              << aggregated.height << " (" << out_path << ")\n";
    return 0;
}

/// Maps library failures onto the documented exit codes.
int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const lulc::Timeout& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const lulc::HttpStatus& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const lulc::NetworkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const lulc::DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::BadFactor& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::MissingFixedValue& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::BadBbox& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::BadSize& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::NoBands& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lulc::Error& e) {
        // Parse failures and unreadable inputs.
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"land-use/land-cover classification toolkit"};
    app.set_version_flag("--version", "lulc 1.0.0");
    app.require_subcommand(1);

    // info
    std::string info_raster;
    auto* info = app.add_subcommand("info", "Describe a GeoTIFF raster");
    info->add_option("--raster", info_raster, "Input GeoTIFF")->required();

    // classify
    PipelineOptions classify_opt;
    auto* classify =
        app.add_subcommand("classify", "Classify a raster against color ranges");
    classify->add_option("--raster", classify_opt.raster, "Input GeoTIFF")
        ->required();
    classify->add_option("--ranges", classify_opt.ranges, "RangeList XML")
        ->required();
    classify->add_option("--hierarchy", classify_opt.hierarchy,
                         "Category hierarchy CSV");
    add_region_options(classify, classify_opt);
    classify->add_option("--out-dir", classify_opt.out_dir, "Output directory");

    // zonal
    PipelineOptions zonal_opt;
    auto* zonal =
        app.add_subcommand("zonal", "Per-class area report for a region");
    zonal->add_option("--raster", zonal_opt.raster, "Input GeoTIFF")->required();
    zonal->add_option("--ranges", zonal_opt.ranges, "RangeList XML")->required();
    zonal->add_option("--hierarchy", zonal_opt.hierarchy,
                      "Category hierarchy CSV");
    add_region_options(zonal, zonal_opt);
    add_area_options(zonal, zonal_opt);
    zonal->add_option("--out-dir", zonal_opt.out_dir, "Output directory");

    // compare
    PipelineOptions compare_opt;
    std::string compare_computed;
    auto* compare =
        app.add_subcommand("compare", "Compare computed areas against census");
    compare->add_option("--census", compare_opt.census, "Census CSV")
        ->required();
    compare->add_option("--computed", compare_computed,
                        "Precomputed area report (.csv or .json)");
    compare->add_option("--raster", compare_opt.raster, "Input GeoTIFF");
    compare->add_option("--ranges", compare_opt.ranges, "RangeList XML");
    compare->add_option("--hierarchy", compare_opt.hierarchy,
                        "Category hierarchy CSV");
    add_region_options(compare, compare_opt);
    add_area_options(compare, compare_opt);
    compare->add_option("--out-dir", compare_opt.out_dir, "Output directory");

    // calibrate
    PipelineOptions calibrate_opt;
    double epsilon = 0.10;
    int max_passes = 50;
    bool recenter = false;
    auto* calibrate = app.add_subcommand(
        "calibrate", "Search band tolerances to match census areas");
    calibrate->add_option("--raster", calibrate_opt.raster, "Input GeoTIFF")
        ->required();
    calibrate->add_option("--ranges", calibrate_opt.ranges, "RangeList XML")
        ->required();
    calibrate->add_option("--hierarchy", calibrate_opt.hierarchy,
                          "Category hierarchy CSV");
    calibrate->add_option("--census", calibrate_opt.census, "Census CSV")
        ->required();
    add_region_options(calibrate, calibrate_opt);
    add_area_options(calibrate, calibrate_opt);
    calibrate->add_option("--epsilon", epsilon,
                          "Relative per-class stopping tolerance");
    calibrate->add_option("--max-passes", max_passes, "Descent pass limit");
    calibrate->add_flag("--recenter", recenter,
                        "Move band centers to matched-pixel medians");
    calibrate->add_option("--out-dir", calibrate_opt.out_dir,
                          "Output directory");

    // fetch
    lulc::WmsRequest request;
    std::string wms_version = "1.1.1";
    std::vector<double> bbox;
    std::string fetch_out = "map.bin";
    std::string cache_dir_flag;
    int timeout = 30;
    auto* fetch = app.add_subcommand("fetch", "Fetch a WMS GetMap image");
    fetch->add_option("--endpoint", request.endpoint, "WMS base URL")
        ->required();
    fetch->add_option("--wms-version", wms_version, "1.1.1 or 1.3.0");
    fetch->add_option("--layer", request.layer, "Layer name")->required();
    fetch->add_option("--crs", request.crs_code, "Numeric EPSG code");
    fetch->add_option("--bbox", bbox, "min_x,min_y,max_x,max_y")
        ->delimiter(',')
        ->expected(4)
        ->required();
    fetch->add_option("--width", request.width, "Pixel width")->required();
    fetch->add_option("--height", request.height, "Pixel height")->required();
    fetch->add_option("--format", request.format, "Image MIME type");
    fetch->add_option("--out", fetch_out, "Output file");
    fetch->add_option("--cache-dir", cache_dir_flag,
                      "Cache directory (default $LULC_CACHE_DIR or .lulc-cache)");
    fetch->add_option("--timeout", timeout, "Timeout in seconds");

    // aggregate
    PipelineOptions aggregate_opt;
    int factor = 0;
    std::string rule_name = "majority";
    std::string aggregate_out = "aggregated.tif";
    auto* aggregate = app.add_subcommand(
        "aggregate", "Downscale the classified raster by block rule");
    aggregate->add_option("--raster", aggregate_opt.raster, "Input GeoTIFF")
        ->required();
    aggregate->add_option("--ranges", aggregate_opt.ranges, "RangeList XML")
        ->required();
    aggregate->add_option("--hierarchy", aggregate_opt.hierarchy,
                          "Category hierarchy CSV");
    add_region_options(aggregate, aggregate_opt);
    aggregate->add_option("--factor", factor, "Block size (>= 2)")->required();
    aggregate->add_option("--rule", rule_name, "majority or central");
    aggregate->add_option("--out", aggregate_out, "Output GeoTIFF");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;  // bad flags are configuration failures
    }

    return run_guarded([&]() -> int {
        if (*info) return cmd_info(info_raster);
        if (*classify) return cmd_classify(classify_opt);
        if (*zonal) return cmd_zonal(zonal_opt);
        if (*compare) return cmd_compare(compare_opt, compare_computed);
        if (*calibrate)
            return cmd_calibrate(calibrate_opt, epsilon, max_passes, recenter);
        if (*fetch) {
            if (wms_version == "1.1.1") request.version = lulc::WmsVersion::v1_1_1;
            else if (wms_version == "1.3.0") request.version = lulc::WmsVersion::v1_3_0;
            else throw lulc::ConfigError("unknown WMS version \"" + wms_version + "\"");
            request.min_x = bbox[0];
            request.min_y = bbox[1];
            request.max_x = bbox[2];
            request.max_y = bbox[3];
            return cmd_fetch(request, fetch_out, cache_dir_flag, timeout);
        }
        if (*aggregate)
            return cmd_aggregate(aggregate_opt, factor, rule_name, aggregate_out);
        return 3;
    });
}
