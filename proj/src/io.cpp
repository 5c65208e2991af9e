#include "bri/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bri/rng.hpp"

namespace bri::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("short write to " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_manifest(const std::string& out_dir, const std::string& subcommand,
                    const std::string& config_path, std::uint64_t seed,
                    const std::vector<ManifestEntry>& artifacts) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["config"] = config_path;
    j["seed"] = seed;
    j["output_dir"] = out_dir;
    j["rng_algorithm"] = kRngAlgorithm;
    const auto now = std::chrono::system_clock::now();
    j["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                              now.time_since_epoch())
                              .count();
    nlohmann::json arts = nlohmann::json::object();
    for (const auto& a : artifacts) {
        char hex[19];
        std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(a.checksum));
        arts[a.filename] = std::string("fnv1a64:") + hex;
    }
    j["artifacts"] = arts;
    write_file((std::filesystem::path(out_dir) / "manifest.json").string(), j.dump(2) + "\n");
}

ManifestEntry checksum_file(const std::string& dir, const std::string& filename) {
    const auto bytes = read_file((std::filesystem::path(dir) / filename).string());
    return {filename, fnv1a64(bytes.data(), bytes.size())};
}

}  // namespace bri::io
