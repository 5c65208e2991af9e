#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bri::io {

/// Formats a double with round-trip precision, '.' decimal point, no locale.
std::string format_double(double v);

/// Joins cells with ',' and terminates with LF.
std::string csv_row(const std::vector<std::string>& cells);

/// Writes bytes exactly (binary mode; no newline translation).
void write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

struct ManifestEntry {
    std::string filename;
    std::uint64_t checksum = 0;  // FNV-1a 64 over the file bytes
};

/// Writes manifest.json describing one CLI run: subcommand, config path,
/// seed, output dir, RNG algorithm id, timestamp, and a checksum per
/// emitted artifact.
void write_manifest(const std::string& out_dir, const std::string& subcommand,
                    const std::string& config_path, std::uint64_t seed,
                    const std::vector<ManifestEntry>& artifacts);

/// Convenience: checksum a just-written artifact.
ManifestEntry checksum_file(const std::string& dir, const std::string& filename);

}  // namespace bri::io
