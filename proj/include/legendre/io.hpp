#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "legendre/analysis.hpp"
#include "legendre/plane.hpp"

namespace legendre::io {

struct CurveSource {
    enum class Kind { expression, catalog, csv, synthesis };
    Kind kind = Kind::catalog;
    std::string x, y;          // expression
    std::string name;          // catalog
    std::vector<double> params;
    std::filesystem::path path;  // csv
    std::string alpha, kappa;  // synthesis
    Vec2 gamma0{0, 0};
    double eta0_angle = 0.0;
    std::optional<Domain> domain;
    bool closed = false;
    std::size_t samples = ParamCurve::kDefaultSamples;
    std::size_t steps = 4096;
};

struct Operation {
    std::string kind = "analyze";
    double d = 0.0;                      // involute, parallel
    Vec2 point{0, 0};                    // pedal
    std::optional<CurveSource> second;   // contact
    double t0 = 0.0, u0 = 0.0;
    int kmax = 4;
    std::optional<NormSpec> target;      // transfer
};

struct OutputPaths {
    std::filesystem::path csv, svg, report;
};

struct RunConfig {
    NormSpec norm;
    CurveSource curve;
    Operation operation;
    OutputPaths output;
    double residual_tolerance = LegendreCurve::kResidualTolerance;
    std::filesystem::path base_dir;  // relative input paths resolve here
};

/// ConfigError on schema violations.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
/// IoError when unreadable, ParseError on malformed JSON.
RunConfig load_config(const std::filesystem::path& path);

PlanePtr build_plane_from(const NormSpec& spec);
ParamCurve build_curve(const CurveSource& src, PlanePtr plane, const std::filesystem::path& base_dir);
LegendreCurve build_legendre(const CurveSource& src, PlanePtr plane, const std::filesystem::path& base_dir,
                             double tolerance = LegendreCurve::kResidualTolerance);

struct SampleRow {
    double t = 0.0;
    Vec2 p;
    std::optional<double> alpha, kappa, k;
};

std::vector<SampleRow> sample_rows(const LegendreCurve& L);
std::string csv_text(const std::vector<SampleRow>& rows);
void emit_csv(const std::vector<SampleRow>& rows, const std::filesystem::path& path);

/// Reads t,x,y columns (extra columns ignored) and interpolates them.
ParamCurve load_csv_curve(const std::filesystem::path& path, bool closed, std::size_t samples);

struct SvgCurve {
    std::string label;
    std::vector<Vec2> points;
    bool closed = false;
};
struct SvgMarkers {
    std::vector<Vec2> cusps, vertices, inflections;
};
std::string svg_text(const std::vector<SvgCurve>& curves, const SvgMarkers& markers);
void emit_svg(const std::vector<SvgCurve>& curves, const SvgMarkers& markers, const std::filesystem::path& path);

nlohmann::json report_json(const SingularityReport& report);
void emit_report(const nlohmann::json& report, const std::filesystem::path& path);

int exit_code_for(ErrorKind kind);

struct RunOverrides {
    std::optional<std::size_t> samples;
    std::optional<std::filesystem::path> out_dir;
};

/// Executes the pipeline; returns the process exit code and reports failures on err.
int run(RunConfig config, const RunOverrides& overrides, std::ostream& out, std::ostream& err);

}  // namespace legendre::io
