#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace entchaos {

enum class SeriesFormat { csv, jsonl };

/// A rectangular table with named columns. Values are kept as rendered
/// strings so machine-precision numbers (17 significant digits) and
/// full-precision decimal strings can share one writer.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> values);
};

std::string format_double(double x);  // 17 significant digits

/// Writes CSV (header + rows) or JSON lines (one object per row).
void emit_series(const std::string& path, const SeriesTable& table, SeriesFormat format);

/// FNV-1a over the canonicalized config text; stable across platforms.
std::uint64_t fnv1a64(const std::string& text);

struct RunManifest {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string precision;
    std::string library_version;
    std::map<std::string, double> timings_s;
    std::vector<std::string> aborts;
    std::vector<std::string> files;
};

void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace entchaos
