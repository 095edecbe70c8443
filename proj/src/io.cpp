#include "legendre/io.hpp"

#include <algorithm>
#include <boost/math/interpolators/barycentric_rational.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "legendre/catalog.hpp"
#include "legendre/derived.hpp"
#include "legendre/error.hpp"
#include "legendre/expression.hpp"
#include "legendre/synthesis.hpp"

namespace legendre::io {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double number_at(const json& obj, const char* key, std::optional<double> fallback = std::nullopt) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        config_error(std::string("missing number '") + key + "'");
    }
    if (!v->is_number()) config_error(std::string("'") + key + "' must be a number");
    return v->get<double>();
}

std::string string_at(const json& obj, const char* key) {
    const json* v = find(obj, key);
    if (!v) config_error(std::string("missing string '") + key + "'");
    if (!v->is_string()) config_error(std::string("'") + key + "' must be a string");
    return v->get<std::string>();
}

std::size_t count_at(const json& obj, const char* key, std::size_t fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer() || v->get<long long>() <= 0) config_error(std::string("'") + key + "' must be a positive integer");
    return v->get<std::size_t>();
}

bool bool_at(const json& obj, const char* key, bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) config_error(std::string("'") + key + "' must be true or false");
    return v->get<bool>();
}

std::vector<double> numbers_at(const json& obj, const char* key) {
    const json* v = find(obj, key);
    if (!v) return {};
    if (!v->is_array()) config_error(std::string("'") + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const json& x : *v) {
        if (!x.is_number()) config_error(std::string("'") + key + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Vec2 point_at(const json& obj, const char* key, std::optional<Vec2> fallback = std::nullopt) {
    if (!find(obj, key)) {
        if (fallback) return *fallback;
        config_error(std::string("missing point '") + key + "'");
    }
    const std::vector<double> v = numbers_at(obj, key);
    if (v.size() != 2) config_error(std::string("'") + key + "' must be [x, y]");
    return {v[0], v[1]};
}

const json& object_at(const json& obj, const char* key) {
    const json* v = find(obj, key);
    if (!v || !v->is_object()) config_error(std::string("missing object '") + key + "'");
    return *v;
}

NormSpec parse_norm(const json& j) {
    const std::string kind = string_at(j, "kind");
    NormSpec spec;
    if (kind == "euclidean") {
        spec = NormSpec::euclidean();
    } else if (kind == "lp") {
        spec = NormSpec::lp(number_at(j, "p"));
    } else if (kind == "fourier_radial") {
        spec = NormSpec::fourier(numbers_at(j, "coefficients"));
    } else {
        config_error("unknown norm kind '" + kind + "'");
    }
    spec.table_size = count_at(j, "grid", spec.table_size);
    return spec;
}

CurveSource parse_curve(const json& j) {
    CurveSource c;
    const std::string kind = string_at(j, "kind");
    if (kind == "expression") {
        c.kind = CurveSource::Kind::expression;
        c.x = string_at(j, "x");
        c.y = string_at(j, "y");
    } else if (kind == "catalog") {
        c.kind = CurveSource::Kind::catalog;
        c.name = string_at(j, "name");
        c.params = numbers_at(j, "params");
    } else if (kind == "csv") {
        c.kind = CurveSource::Kind::csv;
        c.path = string_at(j, "path");
    } else if (kind == "synthesis") {
        c.kind = CurveSource::Kind::synthesis;
        c.alpha = string_at(j, "alpha");
        c.kappa = string_at(j, "kappa");
        c.gamma0 = point_at(j, "gamma0", Vec2{0, 0});
        c.eta0_angle = number_at(j, "eta0_angle", 0.0);
        c.steps = count_at(j, "steps", c.steps);
    } else {
        config_error("unknown curve kind '" + kind + "'");
    }
    c.closed = bool_at(j, "closed", false);
    if (find(j, "domain")) {
        const std::vector<double> d = numbers_at(j, "domain");
        if (d.size() != 2 || !(d[1] > d[0])) config_error("'domain' must be [a, b] with a < b");
        c.domain = Domain{d[0], d[1], c.closed};
    }
    c.samples = count_at(j, "samples", c.samples);
    return c;
}

Operation parse_operation(const json& j) {
    Operation op;
    op.kind = string_at(j, "kind");
    if (op.kind == "analyze" || op.kind == "maslov" || op.kind == "evolute") {
    } else if (op.kind == "involute" || op.kind == "parallel") {
        op.d = number_at(j, "d", 0.0);
    } else if (op.kind == "pedal") {
        op.point = point_at(j, "point");
    } else if (op.kind == "contact") {
        op.second = parse_curve(object_at(j, "curve"));
        op.t0 = number_at(j, "t0", 0.0);
        op.u0 = number_at(j, "u0", 0.0);
        const double k = number_at(j, "kmax", 4.0);
        if (k != std::floor(k)) config_error("'kmax' must be an integer");
        op.kmax = static_cast<int>(k);
    } else if (op.kind == "transfer") {
        op.target = parse_norm(object_at(j, "norm"));
    } else {
        config_error("unknown operation '" + op.kind + "'");
    }
    return op;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const json& doc, const fs::path& base_dir) {
    if (!doc.is_object()) config_error("config must be a JSON object");
    RunConfig cfg;
    cfg.base_dir = base_dir;
    cfg.norm = find(doc, "norm") ? parse_norm(object_at(doc, "norm")) : NormSpec::euclidean();
    cfg.curve = parse_curve(object_at(doc, "curve"));
    cfg.operation = find(doc, "operation") ? parse_operation(object_at(doc, "operation")) : Operation{};
    if (const json* out = find(doc, "output")) {
        if (!out->is_object()) config_error("'output' must be an object");
        if (find(*out, "csv")) cfg.output.csv = string_at(*out, "csv");
        if (find(*out, "svg")) cfg.output.svg = string_at(*out, "svg");
        if (find(*out, "report")) cfg.output.report = string_at(*out, "report");
    }
    if (find(doc, "samples")) cfg.curve.samples = count_at(doc, "samples", cfg.curve.samples);
    if (const json* tol = find(doc, "tolerances")) {
        if (!tol->is_object()) config_error("'tolerances' must be an object");
        cfg.residual_tolerance = number_at(*tol, "legendre_residual", cfg.residual_tolerance);
        if (!(cfg.residual_tolerance > 0)) config_error("'legendre_residual' must be positive");
    }
    return cfg;
}

RunConfig load_config(const fs::path& path) {
    const std::string text = read_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << path.string() << " at byte " << e.byte << ": " << e.what();
        throw Error(ErrorKind::ParseError, msg.str());
    }
    return parse_config(doc, path.parent_path());
}

PlanePtr build_plane_from(const NormSpec& spec) { return build_plane(spec); }

// ---- CSV ----

std::vector<SampleRow> sample_rows(const LegendreCurve& L) {
    const CurvaturePair cp = curvature_pair(L);
    const std::vector<std::optional<double>> k = circular_curvature(cp);
    std::vector<SampleRow> rows;
    rows.reserve(cp.t.size());
    for (std::size_t i = 0; i < cp.t.size(); ++i) {
        rows.push_back({cp.t[i], L.gamma()(cp.t[i]), cp.alpha[i], cp.kappa[i], k[i]});
    }
    return rows;
}

std::string csv_text(const std::vector<SampleRow>& rows) {
    std::string out = "t,x,y,alpha,kappa,k\n";
    auto cell = [](const std::optional<double>& v) {
        return v && std::isfinite(*v) ? num17(*v) : std::string();
    };
    for (const SampleRow& r : rows) {
        out += num17(r.t) + "," + num17(r.p.x) + "," + num17(r.p.y) + "," + cell(r.alpha) + "," + cell(r.kappa) + "," +
               cell(r.k) + "\n";
    }
    return out;
}

void emit_csv(const std::vector<SampleRow>& rows, const fs::path& path) {
    if (rows.empty()) throw Error(ErrorKind::IoError, "refusing to write an empty curve to " + path.string());
    write_file(path, csv_text(rows));
}

ParamCurve load_csv_curve(const fs::path& path, bool closed, std::size_t samples) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ConfigError, path.string() + " is empty");
    std::vector<std::string> header;
    {
        std::stringstream hs(line);
        std::string h;
        while (std::getline(hs, h, ',')) {
            h.erase(std::remove_if(h.begin(), h.end(), [](unsigned char c) { return std::isspace(c); }), h.end());
            header.push_back(h);
        }
    }
    auto column = [&](const char* name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw Error(ErrorKind::ConfigError, path.string() + " lacks a '" + name + "' column");
        return static_cast<std::size_t>(std::distance(header.begin(), it));
    };
    const std::size_t ct = column("t"), cx = column("x"), cy = column("y");
    std::vector<double> t, x, y;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        auto value = [&](std::size_t i) {
            double v = 0;
            if (i >= cells.size()) throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(lineno) + ": missing cell");
            const std::string& s = cells[i];
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
            }
            return v;
        };
        t.push_back(value(ct));
        x.push_back(value(cx));
        y.push_back(value(cy));
    }
    const std::size_t n = t.size();
    if (n < 16) throw Error(ErrorKind::ConfigError, path.string() + " needs at least 16 rows");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(t[i] > t[i - 1])) throw Error(ErrorKind::ConfigError, path.string() + ": t must increase strictly");
    }
    constexpr std::size_t kOrder = 5;
    Domain dom{t.front(), t.back(), false};
    if (closed) {
        // rows sample [t0, t0 + span) uniformly; pad periodically on both sides
        const double span = (t.back() - t.front()) * static_cast<double>(n) / static_cast<double>(n - 1);
        dom = Domain{t.front(), t.front() + span, true};
        constexpr std::size_t kPad = 8;
        std::vector<double> pt, px, py;
        for (std::size_t i = n - kPad; i < n; ++i) {
            pt.push_back(t[i] - span);
            px.push_back(x[i]);
            py.push_back(y[i]);
        }
        pt.insert(pt.end(), t.begin(), t.end());
        px.insert(px.end(), x.begin(), x.end());
        py.insert(py.end(), y.begin(), y.end());
        for (std::size_t i = 0; i <= kPad; ++i) {
            pt.push_back(t[i] + span);
            px.push_back(x[i]);
            py.push_back(y[i]);
        }
        t = pt;
        x = std::move(px);
        y = std::move(py);
    }
    using Interp = boost::math::barycentric_rational<double>;
    auto ix = std::make_shared<Interp>(t.begin(), t.end(), x.begin(), kOrder);
    auto iy = std::make_shared<Interp>(t.begin(), t.end(), y.begin(), kOrder);
    return ParamCurve(
        dom, [ix, iy](double s) { return Vec2{(*ix)(s), (*iy)(s)}; }, {}, samples, 1e-6);
}

// ---- curve construction ----

ParamCurve build_curve(const CurveSource& src, PlanePtr plane, const fs::path& base_dir) {
    switch (src.kind) {
        case CurveSource::Kind::catalog: return catalog::by_name(src.name, src.params, std::move(plane), src.samples);
        case CurveSource::Kind::expression: {
            const Expression ex = parse_expression(src.x);
            const Expression ey = parse_expression(src.y);
            const Domain dom = src.domain.value_or(Domain{0.0, kTwoPi, src.closed});
            return ParamCurve(dom, [ex, ey](double t) { return Vec2{ex(t), ey(t)}; }, {}, src.samples);
        }
        case CurveSource::Kind::csv: {
            const fs::path p = src.path.is_absolute() || base_dir.empty() ? src.path : base_dir / src.path;
            return load_csv_curve(p, src.closed, src.samples);
        }
        case CurveSource::Kind::synthesis: break;
    }
    throw Error(ErrorKind::ConfigError, "synthesis sources produce Legendre curves directly");
}

LegendreCurve build_legendre(const CurveSource& src, PlanePtr plane, const fs::path& base_dir, double tolerance) {
    if (src.kind == CurveSource::Kind::synthesis) {
        const Expression a = parse_expression(src.alpha);
        const Expression k = parse_expression(src.kappa);
        SynthesisSpec spec;
        spec.alpha = [a](double t) { return a(t); };
        spec.kappa = [k](double t) { return k(t); };
        spec.domain = src.domain.value_or(Domain{0.0, kTwoPi, src.closed});
        spec.p = src.gamma0;
        spec.v = plane->normalize(polar(src.eta0_angle));
        spec.steps = src.steps;
        spec.samples = src.samples;
        return synthesize(std::move(plane), spec);
    }
    ParamCurve gamma = build_curve(src, plane, base_dir);
    NormalField eta = extend_normal(plane, gamma);
    return LegendreCurve(std::move(plane), std::move(gamma), std::move(eta), tolerance);
}

// ---- SVG ----

std::string svg_text(const std::vector<SvgCurve>& curves, const SvgMarkers& markers) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    auto grow = [&](Vec2 p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const SvgCurve& c : curves) std::for_each(c.points.begin(), c.points.end(), grow);
    for (const auto* set : {&markers.cusps, &markers.vertices, &markers.inflections}) std::for_each(set->begin(), set->end(), grow);
    if (!(x1 >= x0)) throw Error(ErrorKind::IoError, "nothing to plot");
    double w = x1 - x0, h = y1 - y0;
    const double extent = std::max({w, h, 1e-9});
    // degenerate boxes (a single point) still get a visible frame
    if (w < 1e-9 * extent || w == 0) { x0 -= extent / 2; w = extent; }
    if (h < 1e-9 * extent || h == 0) { y0 -= extent / 2; h = extent; }
    const double mx = 0.05 * w, my = 0.05 * h;
    const double diag = std::hypot(w, h);
    const double r = 0.005 * diag;
    const double vx = x0 - mx, vy = -(y0 + h) - my, vw = w + 2 * mx, vh = h + 2 * my;

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num9(vx) << " " << num9(vy) << " " << num9(vw) << " "
      << num9(vh) << "\" width=\"800\" height=\"" << num9(800 * vh / vw) << "\">\n";
    s << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const SvgCurve& c = curves[i];
        std::string d;
        bool pen = false, all_finite = true;
        for (const Vec2& p : c.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                pen = false;
                all_finite = false;
                continue;
            }
            d += (pen ? " L" : (d.empty() ? "M" : " M")) + num9(p.x) + " " + num9(p.y);
            pen = true;
        }
        if (c.closed && all_finite && !d.empty()) d += " Z";
        s << "<path d=\"" << d << "\" stroke=\"" << kPalette[i % 5] << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    for (const Vec2& p : markers.cusps) {
        s << "<circle cx=\"" << num9(p.x) << "\" cy=\"" << num9(p.y) << "\" r=\"" << num9(r) << "\" fill=\"black\"/>\n";
    }
    for (const Vec2& p : markers.vertices) {
        s << "<circle cx=\"" << num9(p.x) << "\" cy=\"" << num9(p.y) << "\" r=\"" << num9(r)
          << "\" stroke=\"black\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    for (const Vec2& p : markers.inflections) {
        s << "<path d=\"M" << num9(p.x - r) << " " << num9(p.y - r) << " L" << num9(p.x + r) << " " << num9(p.y + r)
          << " M" << num9(p.x - r) << " " << num9(p.y + r) << " L" << num9(p.x + r) << " " << num9(p.y - r)
          << "\" stroke=\"black\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    s << "</g>\n";
    const double font = 0.035 * std::min(vw, vh);
    double ty = vy + 1.3 * font;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        s << "<text x=\"" << num9(vx + font) << "\" y=\"" << num9(ty) << "\" font-size=\"" << num9(font)
          << "\" fill=\"" << kPalette[i % 5] << "\">" << curves[i].label << "</text>\n";
        ty += 1.3 * font;
    }
    if (!markers.cusps.empty() || !markers.vertices.empty() || !markers.inflections.empty()) {
        s << "<text x=\"" << num9(vx + font) << "\" y=\"" << num9(ty) << "\" font-size=\"" << num9(font)
          << "\">filled: cusps, open: vertices, cross: inflections</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit_svg(const std::vector<SvgCurve>& curves, const SvgMarkers& markers, const fs::path& path) {
    write_file(path, svg_text(curves, markers));
}

// ---- report ----

json report_json(const SingularityReport& r) {
    json j;
    j["cusps"] = json::array();
    for (const Cusp& c : r.cusps) {
        j["cusps"].push_back({{"t", c.t}, {"zig", c.zig}, {"type", c.zig ? "zig" : "zag"}, {"alpha_prime", c.alpha_prime}});
    }
    j["inflections"] = json::array();
    for (const Inflection& f : r.inflections) {
        j["inflections"].push_back({{"t", f.t}, {"flip", f.flip}, {"type", f.flip ? "flip" : "flop"}});
    }
    j["vertices"] = json::array();
    for (const Vertex& v : r.vertices) j["vertices"].push_back({{"t", v.t}, {"regular", v.regular}});
    j["degenerate_singularities"] = r.degenerate_singularities;
    j["all_vertices"] = r.all_vertices;
    if (r.maslov) {
        auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
        j["maslov"] = {{"word_reduction", opt(r.maslov->word_reduction)},
                       {"flip_flop", opt(r.maslov->flip_flop)},
                       {"rotation", opt(r.maslov->rotation)}};
    } else {
        j["maslov"] = nullptr;
    }
    j["is_front"] = r.is_front;
    j["is_immersion"] = r.is_immersion;
    j["notes"] = r.notes;
    return j;
}

void emit_report(const json& report, const fs::path& path) { write_file(path, report.dump(2) + "\n"); }

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConfigError:
        case ErrorKind::ParseError:
        case ErrorKind::EvalError:
        case ErrorKind::BadParameter:
        case ErrorKind::IoError: return 2;
        case ErrorKind::ConvexityViolation:
        case ErrorKind::PositivityViolation:
        case ErrorKind::LegendreViolation:
        case ErrorKind::SingularPoint:
        case ErrorKind::LimitsDisagree:
        case ErrorKind::NotAnIsometry:
        case ErrorKind::NotUnit: return 3;
        case ErrorKind::NoConvergence:
        case ErrorKind::MethodsDisagree: return 4;
        case ErrorKind::KappaVanishes:
        case ErrorKind::RhoDegenerate:
        case ErrorKind::NotAFront:
        case ErrorKind::NotClosed:
        case ErrorKind::PreconditionViolated:
        case ErrorKind::DegenerateLine:
        case ErrorKind::OutOfDomain:
        case ErrorKind::ZeroVector:
        case ErrorKind::DegenerateFrame: return 5;
    }
    return 1;
}

// ---- pipeline ----

namespace {

SvgCurve trace(const std::string& label, const ParamCurve& c) {
    SvgCurve out{label, {}, c.closed()};
    for (double t : c.grid()) out.points.push_back(c(t));
    return out;
}

SvgMarkers markers_of(const LegendreCurve& L, const SingularityReport& r) {
    SvgMarkers m;
    for (const Cusp& c : r.cusps) m.cusps.push_back(L.gamma()(c.t));
    for (const Vertex& v : r.vertices) m.vertices.push_back(L.gamma()(v.t));
    for (const Inflection& f : r.inflections) m.inflections.push_back(L.gamma()(f.t));
    return m;
}

struct Products {
    std::vector<SampleRow> rows;
    std::vector<SvgCurve> curves;
    SvgMarkers markers;
    json report;
    std::string summary;
};

std::string source_label(const CurveSource& c) {
    switch (c.kind) {
        case CurveSource::Kind::catalog: return c.name;
        case CurveSource::Kind::expression: return "(" + c.x + ", " + c.y + ")";
        case CurveSource::Kind::csv: return c.path.filename().string();
        case CurveSource::Kind::synthesis: return "synthesis (" + c.alpha + ", " + c.kappa + ")";
    }
    return "curve";
}

Products analyze_like(const LegendreCurve& L, const std::string& label, bool force_maslov) {
    Products p;
    const CurvaturePair cp = curvature_pair(L);
    SingularityReport rep = singularity_report(L, cp);
    if (force_maslov) rep.maslov = maslov_index(L, cp);
    const std::vector<std::optional<double>> k = circular_curvature(cp);
    for (std::size_t i = 0; i < cp.t.size(); ++i) p.rows.push_back({cp.t[i], L.gamma()(cp.t[i]), cp.alpha[i], cp.kappa[i], k[i]});
    p.curves.push_back(trace(label, L.gamma()));
    p.markers = markers_of(L, rep);
    p.report = report_json(rep);
    std::ostringstream s;
    s << rep.cusps.size() << " cusps, " << rep.inflections.size() << " inflections, " << rep.vertices.size() << " vertices";
    if (rep.maslov && rep.maslov->word_reduction) s << ", maslov " << *rep.maslov->word_reduction;
    p.summary = s.str();
    return p;
}

json point_json(Vec2 v) { return json::array({v.x, v.y}); }

Products execute(const RunConfig& cfg) {
    const PlanePtr plane = build_plane_from(cfg.norm);
    const LegendreCurve L = build_legendre(cfg.curve, plane, cfg.base_dir, cfg.residual_tolerance);
    const std::string label = source_label(cfg.curve);
    const Operation& op = cfg.operation;
    json info{{"kind", op.kind}};
    Products out;

    if (op.kind == "analyze" || op.kind == "maslov") {
        out = analyze_like(L, label, op.kind == "maslov");
    } else if (op.kind == "evolute") {
        const EvoluteFrame ev = evolute(L);
        out = analyze_like(L, label, false);
        out.rows.clear();
        double amax = 0;
        for (double a : ev.alpha) amax = std::max(amax, std::abs(a));
        std::size_t masked = 0;
        for (std::size_t i = 0; i < ev.t.size(); ++i) {
            SampleRow r{ev.t[i], ev.e(ev.t[i]), ev.alpha[i], std::nullopt, std::nullopt};
            if (ev.masked[i]) {
                ++masked;
            } else {
                r.kappa = ev.kappa[i];
                if (std::abs(ev.alpha[i]) > 1e-6 * amax) r.k = ev.kappa[i] / ev.alpha[i];
            }
            out.rows.push_back(r);
        }
        out.curves.push_back(trace("evolute", ev.e));
        info["masked"] = masked;
        out.summary += "; evolute sampled at " + std::to_string(ev.t.size()) + " nodes";
    } else if (op.kind == "involute" || op.kind == "parallel") {
        const LegendreCurve D = op.kind == "involute" ? involute(L, op.d) : parallel(L, op.d);
        out = analyze_like(D, op.kind + " d = " + num9(op.d), false);
        out.curves.insert(out.curves.begin(), trace(label, L.gamma()));
        info["d"] = op.d;
        info["closed"] = D.closed();
    } else if (op.kind == "pedal") {
        const PedalResult P = pedal(L, op.point);
        out = analyze_like(L, label, false);
        out.rows.clear();
        std::optional<LegendreCurve> front;
        if (P.frontal) front.emplace(P.as_legendre(plane));
        std::optional<CurvaturePair> cp;
        if (front) cp = curvature_pair(*front);
        for (std::size_t i = 0; i < P.t.size(); ++i) {
            SampleRow r{P.t[i], P.curve(P.t[i]), std::nullopt, std::nullopt, std::nullopt};
            if (cp) {
                r.alpha = cp->alpha[i];
                r.kappa = cp->kappa[i];
            }
            out.rows.push_back(r);
        }
        if (cp) {
            const auto k = circular_curvature(*cp);
            for (std::size_t i = 0; i < k.size(); ++i) out.rows[i].k = k[i];
        }
        out.curves.push_back(trace("pedal w.r.t. (" + num9(op.point.x) + ", " + num9(op.point.y) + ")", P.curve));
        info["point"] = point_json(op.point);
        info["frontal"] = P.frontal;
        info["min_distance"] = P.min_distance;
        info["singular_parameters"] = P.singular;
        out.summary += "; pedal singular at " + std::to_string(P.singular.size()) + " parameters";
    } else if (op.kind == "contact") {
        const LegendreCurve L2 = build_legendre(*op.second, plane, cfg.base_dir, cfg.residual_tolerance);
        const int order = contact_order(L, op.t0, L2, op.u0, op.kmax);
        out = analyze_like(L, label, false);
        out.curves.push_back(trace(source_label(*op.second), L2.gamma()));
        info["t0"] = op.t0;
        info["u0"] = op.u0;
        info["contact_order"] = order;
        if (order >= 1) {
            const CurvatureMatchReport m = contact_implies_curvature_match(L, op.t0, L2, op.u0, std::min(order, 3));
            info["curvature_residuals"] = m.residuals;
            info["curvature_matched"] = m.matched;
        }
        out.summary += "; contact order " + std::to_string(order);
    } else if (op.kind == "transfer") {
        const PlanePtr target = build_plane_from(*op.target);
        const LegendreCurve T = transfer_legendre(L, target);
        out = analyze_like(T, label + " in " + describe(*op.target), false);
        info["target"] = describe(*op.target);
    } else {
        throw Error(ErrorKind::ConfigError, "unknown operation '" + op.kind + "'");
    }
    info["norm"] = describe(cfg.norm);
    info["samples"] = L.gamma().samples();
    out.report["operation"] = info;
    return out;
}

fs::path resolve_output(const fs::path& p, const RunOverrides& o) {
    if (p.is_absolute() || !o.out_dir) return p;
    return *o.out_dir / p;
}

}  // namespace

int run(RunConfig config, const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
    try {
        if (overrides.samples) {
            if (*overrides.samples < 16) throw Error(ErrorKind::ConfigError, "--samples must be at least 16");
            config.curve.samples = *overrides.samples;
        }
        const Products p = execute(config);
        // render everything before touching the file system
        std::optional<std::string> csv, svg;
        if (!config.output.csv.empty()) {
            if (p.rows.empty()) throw Error(ErrorKind::IoError, "refusing to write an empty curve");
            csv = csv_text(p.rows);
        }
        if (!config.output.svg.empty()) svg = svg_text(p.curves, p.markers);
        if (csv) write_file(resolve_output(config.output.csv, overrides), *csv);
        if (svg) write_file(resolve_output(config.output.svg, overrides), *svg);
        if (!config.output.report.empty()) emit_report(p.report, resolve_output(config.output.report, overrides));
        out << config.operation.kind << ": " << p.summary << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const nlohmann::json::exception& e) {
        err << "error: ConfigError: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace legendre::io
