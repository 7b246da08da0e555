#include "entchaos/series_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace entchaos {

void SeriesTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> rendered;
    rendered.reserve(values.size());
    for (double v : values) rendered.push_back(format_double(v));
    rows.push_back(std::move(rendered));
}

void SeriesTable::add_row(std::vector<std::string> values) { rows.push_back(std::move(values)); }

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_series(const std::string& path, const SeriesTable& table, SeriesFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_series: cannot open " + path);

    if (format == SeriesFormat::csv) {
        for (size_t c = 0; c < table.columns.size(); ++c)
            out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
        for (const auto& row : table.rows) {
            if (row.size() != table.columns.size())
                throw std::invalid_argument("emit_series: ragged row");
            for (size_t c = 0; c < row.size(); ++c)
                out << row[c] << (c + 1 < row.size() ? "," : "\n");
        }
    } else {
        for (const auto& row : table.rows) {
            if (row.size() != table.columns.size())
                throw std::invalid_argument("emit_series: ragged row");
            nlohmann::ordered_json rec;
            for (size_t c = 0; c < row.size(); ++c) rec[table.columns[c]] = row[c];
            out << rec.dump() << "\n";
        }
    }
    if (!out) throw std::runtime_error("emit_series: write failed for " + path);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::ordered_json j;
    j["config_hash"] = m.config_hash;
    j["seed"] = m.seed;
    j["precision"] = m.precision;
    j["versions"] = {{"entchaos", m.library_version}};
    j["timings_s"] = m.timings_s;
    j["aborts"] = m.aborts;
    j["files"] = m.files;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace entchaos
