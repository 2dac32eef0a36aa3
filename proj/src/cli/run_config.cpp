#include "twinfocal/cli/run_config.hpp"

#include "twinfocal/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace twinfocal::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

// Leading number and the (trimmed) remainder.
bool split_number(std::string_view s, double& value, std::string_view& rest)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{})
        return false;
    rest = trim(std::string_view(res.ptr, static_cast<std::size_t>(s.data() + s.size() - res.ptr)));
    return std::isfinite(value);
}

double plain_number(std::string_view s)
{
    double v = 0.0;
    std::string_view rest;
    if (!split_number(s, v, rest) || !rest.empty())
        throw ConfigError("expected a plain number, got '" + std::string(s) + "'");
    return v;
}

double with_unit(std::string_view s, const std::map<std::string, double, std::less<>>& units, const char* what)
{
    double v = 0.0;
    std::string_view unit;
    if (!split_number(s, v, unit))
        throw ConfigError(std::string("expected a ") + what + ", got '" + std::string(s) + "'");
    const auto it = units.find(unit);
    if (it == units.end()) {
        std::string known;
        for (const auto& [name, scale] : units)
            known += (known.empty() ? "" : ", ") + name;
        throw ConfigError(std::string(what) + " '" + std::string(s) + "' needs a unit (" + known + ")");
    }
    return v * it->second;
}

const std::map<std::string, double, std::less<>> kLengthUnits{
    {"nm", 1e-9}, {"um", 1e-6}, {"\xC2\xB5m", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
const std::map<std::string, double, std::less<>> kAngleUnits{{"deg", std::numbers::pi / 180.0}, {"rad", 1.0}};
const std::map<std::string, double, std::less<>> kTimeUnits{
    {"fs", 1e-15}, {"ps", 1e-12}, {"ns", 1e-9}, {"s", 1.0}};

double angle(std::string_view s)
{
    return with_unit(s, kAngleUnits, "angle");
}

double time_value(std::string_view s)
{
    return with_unit(s, kTimeUnits, "time");
}

std::size_t count(std::string_view s)
{
    const double v = plain_number(s);
    if (v < 0.0 || v != std::floor(v) || v > 1e9)
        throw ConfigError("expected a non-negative integer, got '" + std::string(s) + "'");
    return static_cast<std::size_t>(v);
}

bool boolean(std::string_view s)
{
    if (s == "true" || s == "yes" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "0")
        return false;
    throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> number_list(std::string_view s)
{
    std::vector<double> out;
    for (auto item : split(s, ','))
        out.push_back(plain_number(item));
    return out;
}

std::complex<double> complex_value(std::string_view s)
{
    const auto colon = s.find(':');
    if (colon == std::string_view::npos)
        return plain_number(s);
    return {plain_number(s.substr(0, colon)), plain_number(s.substr(colon + 1))};
}

Instrument instrument_from(std::string_view s)
{
    s = trim(s);
    if (s == "widefield")
        return Instrument::Widefield;
    if (s == "confocal")
        return Instrument::Confocal;
    if (s == "twin" || s == "twin_photon")
        return Instrument::TwinPhoton;
    throw ConfigError("expected widefield, confocal or twin, got '" + std::string(s) + "'");
}

double polynomial(const std::vector<double>& c, double x)
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

struct Entry {
    std::string value;
    int line;
};

class Entries {
public:
    Entries(std::map<std::string, Entry> m, std::string source) : map_(std::move(m)), source_(std::move(source)) {}

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    template <class F>
    auto get(const std::string& key, F&& convert) const
    {
        const Entry& e = map_.at(key);
        try {
            return convert(std::string_view(e.value));
        } catch (const ConfigError& err) {
            throw ConfigError(source_ + ":" + std::to_string(e.line) + ": " + key + ": " + err.what());
        }
    }

    template <class F, class T>
    T get_or(const std::string& key, F&& convert, T fallback) const
    {
        return has(key) ? static_cast<T>(get(key, convert)) : fallback;
    }

    void require(const std::string& key) const
    {
        if (!has(key))
            throw ConfigError(source_ + ": missing required key " + key);
    }

    // Re-throws a validation error against the line of the named key.
    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        const auto it = map_.find(key);
        const std::string where = it == map_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
        throw ConfigError(where + ": " + key + ": " + what);
    }

private:
    std::map<std::string, Entry> map_;
    std::string source_;
};

const std::set<std::string> kKnownKeys{
    "microscope.lambda_p", "microscope.lambda_o", "microscope.lambda_e", "microscope.a", "microscope.f",
    "microscope.f_p", "microscope.w0", "microscope.s0", "microscope.s1", "microscope.d",
    "microscope.unfocused_pump",
    "sample.kind", "sample.separation", "sample.width", "sample.period", "sample.duty", "sample.pitch",
    "sample.nx", "sample.ny", "sample.grid", "sample.origin_x", "sample.origin_y",
    "dispersion.n_o", "dispersion.n_e", "dispersion.n_e_psi", "dispersion.psi", "dispersion.theta_e",
    "dispersion.theta_o", "dispersion.L",
    "timing.t12",
    "quadrature.nodes", "quadrature.truncation_radius", "quadrature.panel_size", "quadrature.target_rel_tol",
    "scan.kind", "scan.instrument", "scan.direction", "scan.half_range", "scan.samples", "scan.half_range_x",
    "scan.half_range_y", "scan.nx", "scan.ny",
    "output.csv", "output.svg", "output.precision"};

MicroscopeConfig parse_microscope(const Entries& e)
{
    for (const char* key : {"microscope.lambda_p", "microscope.a", "microscope.f", "microscope.f_p", "microscope.w0"})
        e.require(key);

    MicroscopeConfig m;
    m.lambda_p = e.get("microscope.lambda_p", parse_length);
    m.a = e.get("microscope.a", parse_length);
    m.f = e.get("microscope.f", parse_length);
    m.f_p = e.get("microscope.f_p", parse_length);
    m.w0 = e.get("microscope.w0", parse_length);

    // Degenerate pair unless overridden; one given wavelength fixes the other.
    const bool has_o = e.has("microscope.lambda_o");
    const bool has_e = e.has("microscope.lambda_e");
    m.lambda_o = has_o ? e.get("microscope.lambda_o", parse_length) : 2.0 * m.lambda_p;
    m.lambda_e = has_e ? e.get("microscope.lambda_e", parse_length) : 2.0 * m.lambda_p;
    if (has_o && !has_e)
        m.lambda_e = 1.0 / (1.0 / m.lambda_p - 1.0 / m.lambda_o);
    if (has_e && !has_o)
        m.lambda_o = 1.0 / (1.0 / m.lambda_p - 1.0 / m.lambda_e);

    m.s0 = e.get_or("microscope.s0", parse_length, m.f);
    if (e.has("microscope.s1")) {
        m.s1 = e.get("microscope.s1", [](std::string_view v) -> std::optional<double> {
            if (v == "collimated" || v == "inf")
                return std::nullopt;
            return parse_length(v);
        });
    }
    m.d = e.get_or("microscope.d", parse_length, m.f_p);
    m.unfocused_pump = e.get_or("microscope.unfocused_pump", boolean, false);
    try {
        m.validate();
    } catch (const ConfigError& err) {
        e.fail("microscope", err.what());
    }
    return m;
}

SampleTransmittance parse_sample(const Entries& e)
{
    const std::string kind = e.get_or("sample.kind", [](std::string_view v) { return std::string(v); },
                                      std::string("delta"));
    SampleTransmittance s;
    if (kind == "delta") {
        s = Delta{};
    } else if (kind == "two_point") {
        e.require("sample.separation");
        s = TwoPoint{e.get("sample.separation", parse_length)};
    } else if (kind == "slit") {
        e.require("sample.width");
        s = Slit{e.get("sample.width", parse_length)};
    } else if (kind == "grating") {
        e.require("sample.period");
        s = Grating{e.get("sample.period", parse_length), e.get_or("sample.duty", plain_number, 0.5)};
    } else if (kind == "raster") {
        for (const char* key : {"sample.pitch", "sample.nx", "sample.ny", "sample.grid"})
            e.require(key);
        const double pitch = e.get("sample.pitch", parse_length);
        const std::size_t nx = e.get("sample.nx", count);
        const std::size_t ny = e.get("sample.ny", count);
        auto values = e.get("sample.grid", [](std::string_view v) {
            std::vector<std::complex<double>> out;
            for (auto row : split(v, ';'))
                for (auto item : split(row, ','))
                    if (!item.empty())
                        out.push_back(complex_value(item));
            return out;
        });
        Raster r = Raster::centred(pitch, nx, ny, std::move(values));
        r.origin.x = e.get_or("sample.origin_x", parse_length, r.origin.x);
        r.origin.y = e.get_or("sample.origin_y", parse_length, r.origin.y);
        s = std::move(r);
    } else {
        e.fail("sample.kind", "expected delta, two_point, slit, grating or raster, got '" + kind + "'");
    }
    try {
        validate(s);
    } catch (const ConfigError& err) {
        e.fail("sample.kind", err.what());
    }
    return s;
}

std::optional<DispersionSpec> parse_dispersion(const Entries& e)
{
    const bool any = e.has("dispersion.n_o") || e.has("dispersion.n_e") || e.has("dispersion.L") ||
                     e.has("dispersion.psi");
    if (!any)
        return std::nullopt;
    for (const char* key : {"dispersion.n_o", "dispersion.n_e", "dispersion.psi", "dispersion.L"})
        e.require(key);
    DispersionSpec d;
    d.n_o = e.get("dispersion.n_o", number_list);
    d.n_e = e.get("dispersion.n_e", number_list);
    d.n_e_psi = e.get_or("dispersion.n_e_psi", number_list, std::vector<double>{});
    d.psi = e.get("dispersion.psi", angle);
    d.theta_e = e.get_or("dispersion.theta_e", angle, 0.0);
    d.theta_o = e.get_or("dispersion.theta_o", angle, 0.0);
    d.L = e.get("dispersion.L", parse_length);
    try {
        d.model().validate();
    } catch (const ConfigError& err) {
        e.fail("dispersion", err.what());
    }
    return d;
}

QuadratureSpec parse_quadrature(const Entries& e)
{
    QuadratureSpec q;
    q.nodes = static_cast<int>(e.get_or("quadrature.nodes", count, std::size_t{8}));
    q.truncation_radius = e.get_or("quadrature.truncation_radius", parse_length, 0.0);
    q.panel_size = e.get_or("quadrature.panel_size", parse_length, 0.0);
    q.target_rel_tol = e.get_or("quadrature.target_rel_tol", plain_number, 1e-8);
    try {
        q.validate();
    } catch (const ConfigError& err) {
        e.fail("quadrature", err.what());
    }
    return q;
}

Vec2 direction(std::string_view v)
{
    if (v.find(',') != std::string_view::npos) {
        const auto parts = number_list(v);
        if (parts.size() != 2)
            throw ConfigError("direction needs two components");
        return {parts[0], parts[1]};
    }
    const double a = angle(v);
    return {std::cos(a), std::sin(a)};
}

ScanPlan parse_scan(const Entries& e, const MicroscopeConfig& m)
{
    ScanPlan plan;
    plan.instrument = e.get_or("scan.instrument", instrument_from, Instrument::TwinPhoton);
    const std::string kind = e.get_or("scan.kind", [](std::string_view v) { return std::string(v); },
                                      std::string("line"));
    const double default_half = 2.0 * airy_radius(m);
    if (kind == "line") {
        LinePlan line;
        line.direction = e.get_or("scan.direction", direction, Vec2{1.0, 0.0});
        line.half_range = e.get_or("scan.half_range", parse_length, default_half);
        line.samples = e.get_or("scan.samples", count, std::size_t{401});
        plan.geometry = line;
    } else if (kind == "grid") {
        GridPlan grid;
        grid.half_range_x = e.get_or("scan.half_range_x", parse_length, default_half);
        grid.half_range_y = e.get_or("scan.half_range_y", parse_length, default_half);
        grid.nx = e.get_or("scan.nx", count, std::size_t{64});
        grid.ny = e.get_or("scan.ny", count, std::size_t{64});
        plan.geometry = grid;
    } else {
        e.fail("scan.kind", "expected line or grid, got '" + kind + "'");
    }
    try {
        plan.validate();
    } catch (const ConfigError& err) {
        e.fail("scan", err.what());
    }
    return plan;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + fmt(v[i]);
    return out;
}

}  // namespace

DispersionModel DispersionSpec::model() const
{
    DispersionModel m;
    if (!n_o.empty())
        m.n_o = [c = n_o](double w) { return polynomial(c, w); };
    if (!n_e.empty())
        m.n_e = [c = n_e, q = n_e_psi](double w, double psi) {
            double extra = 0.0;
            double p = psi;
            for (double coeff : q) {
                extra += coeff * p;
                p *= psi;
            }
            return polynomial(c, w) + extra;
        };
    m.psi = psi;
    m.theta_e = theta_e;
    m.theta_o = theta_o;
    m.L = L;
    return m;
}

TimingWindow RunConfig::timing() const
{
    TimingWindow w;
    if (!dispersion)
        return w;
    w.crystal = crystal_constants(dispersion->model(), angular_frequency(microscope.lambda_o),
                                  angular_frequency(microscope.lambda_e));
    w.t12 = t12 ? *t12 : 0.5 * w.crystal->window();
    return w;
}

RunConfig default_run_config()
{
    RunConfig rc;
    rc.microscope = reference_config();
    rc.scan = ScanPlan{LinePlan{{1.0, 0.0}, 2.0 * airy_radius(rc.microscope), 401}, Instrument::TwinPhoton};
    return rc;
}

Instrument parse_instrument(std::string_view text)
{
    return instrument_from(text);
}

double parse_length(std::string_view text)
{
    return with_unit(text, kLengthUnits, "length");
}

std::vector<double> parse_length_list(std::string_view text)
{
    std::vector<double> out;
    if (trim(text).empty())
        return out;
    for (auto item : split(text, ','))
        out.push_back(parse_length(item));
    return out;
}

RunConfig parse_run_config(std::string_view text, const std::string& source)
{
    std::map<std::string, Entry> map;
    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value', got '" +
                              std::string(line) + "'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!kKnownKeys.count(key))
            throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown key " + key);
        if (value.empty())
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + key + ": empty value");
        if (map.count(key))
            throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key " + key);
        map.emplace(key, Entry{value, line_no});
    }

    const Entries e(std::move(map), source);
    RunConfig rc;
    rc.microscope = parse_microscope(e);
    rc.sample = parse_sample(e);
    rc.dispersion = parse_dispersion(e);
    if (e.has("timing.t12"))
        rc.t12 = e.get("timing.t12", time_value);
    rc.quadrature = parse_quadrature(e);
    rc.scan = parse_scan(e, rc.microscope);
    auto text_value = [](std::string_view v) { return std::string(v); };
    rc.output.csv_path = e.get_or("output.csv", text_value, std::string{});
    rc.output.svg_path = e.get_or("output.svg", text_value, std::string{});
    rc.output.precision = static_cast<int>(e.get_or("output.precision", count, std::size_t{9}));
    if (rc.output.precision < 1 || rc.output.precision > 17)
        e.fail("output.precision", "must lie in [1, 17]");
    return rc;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path);
}

std::string serialize(const RunConfig& rc)
{
    std::ostringstream out;
    const MicroscopeConfig& m = rc.microscope;
    out << "microscope.lambda_p = " << fmt(m.lambda_p) << " m\n"
        << "microscope.lambda_o = " << fmt(m.lambda_o) << " m\n"
        << "microscope.lambda_e = " << fmt(m.lambda_e) << " m\n"
        << "microscope.a = " << fmt(m.a) << " m\n"
        << "microscope.f = " << fmt(m.f) << " m\n"
        << "microscope.f_p = " << fmt(m.f_p) << " m\n"
        << "microscope.w0 = " << fmt(m.w0) << " m\n"
        << "microscope.s0 = " << fmt(m.s0) << " m\n"
        << "microscope.s1 = " << (m.s1 ? fmt(*m.s1) + " m" : std::string("collimated")) << "\n"
        << "microscope.d = " << fmt(m.d) << " m\n"
        << "microscope.unfocused_pump = " << (m.unfocused_pump ? "true" : "false") << "\n";

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Delta>) {
                out << "sample.kind = delta\n";
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                out << "sample.kind = two_point\nsample.separation = " << fmt(s.separation) << " m\n";
            } else if constexpr (std::is_same_v<T, Slit>) {
                out << "sample.kind = slit\nsample.width = " << fmt(s.width) << " m\n";
            } else if constexpr (std::is_same_v<T, Grating>) {
                out << "sample.kind = grating\nsample.period = " << fmt(s.period) << " m\nsample.duty = "
                    << fmt(s.duty) << "\n";
            } else {
                out << "sample.kind = raster\nsample.pitch = " << fmt(s.pitch) << " m\nsample.nx = " << s.nx
                    << "\nsample.ny = " << s.ny << "\nsample.origin_x = " << fmt(s.origin.x)
                    << " m\nsample.origin_y = " << fmt(s.origin.y) << " m\nsample.grid = ";
                for (std::size_t j = 0; j < s.ny; ++j) {
                    for (std::size_t i = 0; i < s.nx; ++i) {
                        const auto t = s.at(i, j);
                        out << (i ? ", " : "") << fmt(t.real());
                        if (t.imag() != 0.0)
                            out << ":" << fmt(t.imag());
                    }
                    out << (j + 1 < s.ny ? "; " : "\n");
                }
            }
        },
        rc.sample);

    if (rc.dispersion) {
        const DispersionSpec& d = *rc.dispersion;
        out << "dispersion.n_o = " << fmt_list(d.n_o) << "\n"
            << "dispersion.n_e = " << fmt_list(d.n_e) << "\n";
        if (!d.n_e_psi.empty())
            out << "dispersion.n_e_psi = " << fmt_list(d.n_e_psi) << "\n";
        out << "dispersion.psi = " << fmt(d.psi) << " rad\n"
            << "dispersion.theta_e = " << fmt(d.theta_e) << " rad\n"
            << "dispersion.theta_o = " << fmt(d.theta_o) << " rad\n"
            << "dispersion.L = " << fmt(d.L) << " m\n";
    }
    if (rc.t12)
        out << "timing.t12 = " << fmt(*rc.t12) << " s\n";

    const QuadratureSpec& q = rc.quadrature;
    out << "quadrature.nodes = " << q.nodes << "\n"
        << "quadrature.truncation_radius = " << fmt(q.truncation_radius) << " m\n"
        << "quadrature.panel_size = " << fmt(q.panel_size) << " m\n"
        << "quadrature.target_rel_tol = " << fmt(q.target_rel_tol) << "\n";

    out << "scan.instrument = " << to_string(rc.scan.instrument) << "\n";
    if (const auto* line = std::get_if<LinePlan>(&rc.scan.geometry)) {
        out << "scan.kind = line\n"
            << "scan.direction = " << fmt(line->direction.x) << ", " << fmt(line->direction.y) << "\n"
            << "scan.half_range = " << fmt(line->half_range) << " m\n"
            << "scan.samples = " << line->samples << "\n";
    } else {
        const auto& grid = std::get<GridPlan>(rc.scan.geometry);
        out << "scan.kind = grid\n"
            << "scan.half_range_x = " << fmt(grid.half_range_x) << " m\n"
            << "scan.half_range_y = " << fmt(grid.half_range_y) << " m\n"
            << "scan.nx = " << grid.nx << "\n"
            << "scan.ny = " << grid.ny << "\n";
    }

    if (!rc.output.csv_path.empty())
        out << "output.csv = " << rc.output.csv_path << "\n";
    if (!rc.output.svg_path.empty())
        out << "output.svg = " << rc.output.svg_path << "\n";
    out << "output.precision = " << rc.output.precision << "\n";
    return out.str();
}

}  // namespace twinfocal::cli
