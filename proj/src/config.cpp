#include "mphase/config.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "mphase/types.hpp"

namespace mphase {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw PreconditionError("invalid value for '" + key + "': '" + text + "'");
  return value;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw PreconditionError("line " + std::to_string(number) + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw PreconditionError("line " + std::to_string(number) + ": empty key");
    if (!out.emplace(key, value).second)
      throw PreconditionError("duplicate key '" + key + "'");
  }
  return out;
}

void write_key_values(std::ostream& out, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) out << key << " = " << value << '\n';
}

void check_known_keys(const std::map<std::string, std::string>& values,
                      const std::set<std::string>& known, const std::string& context) {
  for (const auto& entry : values)
    if (!known.contains(entry.first))
      throw PreconditionError("unknown " + context + " key '" + entry.first + "'");
}

int parse_int(const std::string& key, const std::string& text) {
  return parse_number<int>(key, text);
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  return parse_number<std::uint64_t>(key, text);
}

double parse_double(const std::string& key, const std::string& text) {
  const double value = parse_number<double>(key, text);
  if (!std::isfinite(value)) throw PreconditionError("non-finite value for '" + key + "'");
  return value;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace mphase
