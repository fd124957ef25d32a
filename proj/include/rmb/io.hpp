#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmb/convexity.hpp"
#include "rmb/decomposition.hpp"
#include "rmb/norm_evaluator.hpp"
#include "rmb/polygon.hpp"

namespace rmb {

inline constexpr const char* kVersion = "0.1.0";

/// Parses {"vertices": [[x, y], ...]}. Points must be in convex position;
/// points on a side are kept as collinear vertices. Throws MalformedInput or
/// DegenerateInput.
ConvexPolygon parse_polygon_json(const std::string& text);
ConvexPolygon load_polygon(const std::string& path);

nlohmann::json to_json(const ConvexPolygon& polygon);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const GeneralPositionReport& report);
nlohmann::json to_json(const CertifyConfig& config);
nlohmann::json to_json(const ConvexityCertificate& cert);

/// Shortest decimal form (up to 17 significant digits) that reads back exactly.
std::string format_double(double v);

/// Settings echoed into every report.
struct RunInfo {
    double p = 0.0;
    int samples = 2048;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 20240601;
    double delta = 1e-6;
    bool extended_range = false;
};

nlohmann::json to_json(const RunInfo& info);
/// One-line "# key=value ..." summary for text outputs.
std::string run_info_line(const RunInfo& info);

/// "angle,bx,by,norm_value" rows in round-trip decimal.
std::string boundary_csv(const NormEvaluator& ev, const std::vector<BoundaryPoint>& points);

/// Two panels: the polygon outline and the sampled boundary of R_p K, each a
/// single closed path fitted to its own panel, plus a text legend.
std::string boundary_svg(const ConvexPolygon& polygon, const std::vector<BoundaryPoint>& points, const RunInfo& info);

/// Writes text to path; throws InvalidArgument when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace rmb
