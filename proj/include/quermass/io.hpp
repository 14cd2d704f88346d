#pragma once

#include <string>
#include <vector>

namespace quermass {

/// Deterministic number formatting shared by every emitted artifact
/// (shortest round-trip style via %.12g; no locale, no pointers, no time).
std::string format_num(double v);

struct Table {
    std::string schema;  // versioned name, first line of the file
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};

std::string render_csv(const Table& table);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<Series> series;
};

std::string render_svg(const LinePlot& plot);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace quermass
