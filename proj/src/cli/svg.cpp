#include "twinfocal/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace twinfocal::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void header(std::ostringstream& out, const std::string& title)
{
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape(title) << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& x_label, const std::string& y_label)
{
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
        << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
        out << "<text x=\"" << num(f.px(x)) << "\" y=\"" << num(kHeight - kBottom + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick(x) << "</text>\n"
            << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(f.py(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(y) << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"" << num(kHeight - 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(x_label)
        << "</text>\n"
        << "<text x=\"18\" y=\"" << num(kTop + (kHeight - kTop - kBottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
        << num(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series)
{
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = 0.0, y1 = 0.0;
    for (const auto& s : series) {
        for (double x : s.x) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
        }
        for (double y : s.y) {
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x1 > x0)) {
        x0 = 0.0;
        x1 = 1.0;
    }
    if (!(y1 > y0))
        y1 = y0 + 1.0;

    const Frame f{x0, x1, y0, y1};
    std::ostringstream out;
    header(out, title);
    axes(out, f, x_label, y_label);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            out << (i ? " " : "") << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i]));
        out << "\"/>\n";
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << num(kWidth - kRight + 12) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(kWidth - kRight + 36) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(kWidth - kRight + 42) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string heatmap(const std::string& title, std::size_t nx, std::size_t ny, const std::vector<double>& values,
                    double x_min, double x_max, double y_min, double y_max)
{
    const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    const Frame f{x_min, x_max, y_min, y_max};
    const double cw = (kWidth - kLeft - kRight) / static_cast<double>(nx);
    const double ch = (kHeight - kTop - kBottom) / static_cast<double>(ny);

    std::ostringstream out;
    header(out, title);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double v = peak > 0.0 ? std::clamp(values[j * nx + i] / peak, 0.0, 1.0) : 0.0;
            const int g = static_cast<int>(std::lround(255.0 * (1.0 - v)));
            char colour[8];
            std::snprintf(colour, sizeof colour, "#%02x%02x%02x", g, g, g);
            out << "<rect x=\"" << num(kLeft + cw * static_cast<double>(i)) << "\" y=\""
                << num(kHeight - kBottom - ch * static_cast<double>(j + 1)) << "\" width=\"" << num(cw + 0.05)
                << "\" height=\"" << num(ch + 0.05) << "\" fill=\"" << colour << "\"/>\n";
        }
    }
    axes(out, f, "x (m)", "y (m)");
    out << "</svg>\n";
    return out.str();
}

}  // namespace twinfocal::cli
