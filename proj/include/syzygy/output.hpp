#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "syzygy/events.hpp"
#include "syzygy/integrate.hpp"

namespace syzygy {

/// Shortest decimal representation that round-trips to the same double.
/// All numeric output goes through here so repeated runs are byte-identical.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

struct OutputFile {
    std::string name;
    std::string digest;
    std::size_t bytes = 0;
};

struct Manifest {
    std::vector<OutputFile> files;  // sorted by name
};

/// Write via temp file + rename, so readers never observe partial content.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Atomic write into dir/name, returning the manifest entry.
OutputFile write_output(const std::filesystem::path& dir, const std::string& name,
                        std::string_view content);

void write_manifest(const std::filesystem::path& dir, Manifest manifest);

/// Event table, header fixed as `t,kind,middle_body,delta1,delta2,H,I,grazing`.
std::string events_csv(const std::vector<Event>& events);

/// Uniformly sampled trajectory table with conserved quantities and the
/// mass-weighted determinants.
std::string trajectory_csv(const DenseTrajectory& traj, int samples);

}  // namespace syzygy
