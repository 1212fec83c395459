#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

namespace mphase {

/// Parses flat `key = value` text. Blank lines and lines starting with '#' are skipped;
/// duplicate keys and lines without '=' raise PreconditionError.
std::map<std::string, std::string> parse_key_values(std::istream& in);

void write_key_values(std::ostream& out, const std::map<std::string, std::string>& values);

/// Throws PreconditionError naming the first key not in `known`.
void check_known_keys(const std::map<std::string, std::string>& values,
                      const std::set<std::string>& known, const std::string& context);

int parse_int(const std::string& key, const std::string& text);
std::uint64_t parse_u64(const std::string& key, const std::string& text);
double parse_double(const std::string& key, const std::string& text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace mphase
