#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mphase/types.hpp"

namespace mphase::cli {

inline constexpr const char* kToolVersion = "mphase 0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Entry point shared by the executable and the tests. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "4" -> {4}; "2..9" -> {2, ..., 9}.
std::vector<Index> parse_alpha_spec(const std::string& text);

/// "1-800,801-1000" -> 1-based inclusive ranges, in the given order.
std::vector<std::pair<Index, Index>> parse_ranges(const std::string& text);

/// Rejects empty, reversed, out-of-[1, rows] and overlapping ranges.
void check_ranges(const std::vector<std::pair<Index, Index>>& ranges, Index rows);

/// Detect input resolution: a directory (every *.pgm inside), a pattern with * or ? in
/// the file name, or a single file. Results are sorted by name.
std::vector<std::filesystem::path> resolve_inputs(const std::string& spec);

/// 64-bit FNV-1a of a file's bytes as 16 lowercase hex digits.
std::string file_digest(const std::filesystem::path& path);

}  // namespace mphase::cli
