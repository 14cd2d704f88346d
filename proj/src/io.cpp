#include "quermass/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace quermass {

std::string format_num(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("Table: row width does not match the schema");
    rows.push_back(std::move(row));
}

std::string render_csv(const Table& table) {
    std::string out = "# schema: " + table.schema + "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        out += table.columns[i] + (i + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows)
        for (size_t i = 0; i < row.size(); ++i)
            out += row[i] + (i + 1 < row.size() ? "," : "\n");
    return out;
}

namespace {

double x_coord(double x, bool log_x) { return log_x ? std::log10(x) : x; }

}  // namespace

std::string render_svg(const LinePlot& plot) {
    const double width = 640.0, height = 420.0;
    const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : plot.series)
        for (const auto& [x, y] : s.points) {
            double xv = x_coord(x, plot.log_x);
            xmin = std::min(xmin, xv);
            xmax = std::max(xmax, xv);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmin > xmax) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (ymin > ymax) {
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

    auto px = [&](double x) {
        return ml + (x_coord(x, plot.log_x) - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    const char* colors[] = {"#1f6fb4", "#c23b22", "#2d8a4e", "#8a2dab"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\">\n";
    svg += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
           "font-family=\"sans-serif\">" + plot.title + "</text>\n";
    // axes
    svg += "<line x1=\"" + format_num(ml) + "\" y1=\"" + format_num(height - mb) + "\" x2=\"" +
           format_num(width - mr) + "\" y2=\"" + format_num(height - mb) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_num(ml) + "\" y1=\"" + format_num(mt) + "\" x2=\"" +
           format_num(ml) + "\" y2=\"" + format_num(height - mb) + "\" stroke=\"black\"/>\n";
    // axis labels and extreme ticks
    auto xtick = [&](double v) {
        return plot.log_x ? "1e" + format_num(v) : format_num(v);
    };
    svg += "<text x=\"" + format_num(ml) + "\" y=\"" + format_num(height - mb + 18.0) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + xtick(xmin) + "</text>\n";
    svg += "<text x=\"" + format_num(width - mr) + "\" y=\"" + format_num(height - mb + 18.0) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + xtick(xmax) +
           "</text>\n";
    svg += "<text x=\"" + format_num(ml - 6.0) + "\" y=\"" + format_num(height - mb) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" +
           format_num(ymin) + "</text>\n";
    svg += "<text x=\"" + format_num(ml - 6.0) + "\" y=\"" + format_num(mt + 4.0) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" +
           format_num(ymax) + "</text>\n";
    svg += "<text x=\"" + format_num((ml + width - mr) / 2.0) + "\" y=\"" +
           format_num(height - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" +
           plot.x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + format_num((mt + height - mb) / 2.0) +
           "\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 16 " +
           format_num((mt + height - mb) / 2.0) + ")\" text-anchor=\"middle\">" + plot.y_label +
           "</text>\n";

    int color_idx = 0;
    for (const auto& s : plot.series) {
        std::string pts;
        for (const auto& [x, y] : s.points)
            pts += format_num(px(x)) + "," + format_num(py(y)) + " ";
        svg += "<polyline fill=\"none\" stroke=\"" +
               std::string(colors[color_idx % 4]) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
        svg += "<text x=\"" + format_num(width - mr - 4.0) + "\" y=\"" +
               format_num(mt + 16.0 * (color_idx + 1)) +
               "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" +
               colors[color_idx % 4] + "\">" + s.name + "</text>\n";
        ++color_idx;
    }
    svg += "</svg>\n";
    return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
    out << content;
}

}  // namespace quermass
