#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace laser {

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Writes a whole file; throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

/// FNV-1a 64-bit digest, hex-encoded, for manifest input fingerprints.
std::string fnv1a64_hex(std::string_view data);

/// Rounds through a 12-significant-digit decimal representation so JSON
/// reports are stable across platforms.
double round_to_12_digits(double value);

}  // namespace laser
