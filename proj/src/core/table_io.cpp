#include "ilab/core/table_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ilab/core/errors.hpp"

namespace ilab {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::size_t hex_length(int n) { return n <= 2 ? 1 : (std::size_t{1} << (n - 2)); }

}  // namespace

std::string encode_bits_hex(const TruthTable& t) {
  const auto words = t.words();
  if (t.n() <= 2) return std::string(1, kHexDigits[words[0] & 0xf]);
  std::string out;
  out.reserve(hex_length(t.n()));
  const std::size_t bytes = std::size_t{1} << (t.n() - 3);
  for (std::size_t k = 0; k < bytes; ++k) {
    const auto byte = static_cast<unsigned>((words[k / 8] >> (8 * (k % 8))) & 0xff);
    out.push_back(kHexDigits[byte >> 4]);
    out.push_back(kHexDigits[byte & 0xf]);
  }
  return out;
}

TruthTable decode_bits_hex(int n, std::string_view hex) {
  if (n < 1 || n > kMaxVars) throw CapacityError("variable count " + std::to_string(n) + " out of range");
  if (hex.size() != hex_length(n)) {
    throw InputError("bits field has " + std::to_string(hex.size()) + " hex digits, expected " +
                     std::to_string(hex_length(n)) + " for n = " + std::to_string(n));
  }
  for (std::size_t i = 0; i < hex.size(); ++i) {
    if (hex_value(hex[i]) < 0) throw InputError("non-hex character in bits field at position " + std::to_string(i));
  }
  std::vector<std::uint64_t> words(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, 0);
  if (n <= 2) {
    const auto nibble = static_cast<std::uint64_t>(hex_value(hex[0]));
    if (nibble & ~valid_mask(n)) throw InputError("unused bits of the last nibble must be zero");
    words[0] = nibble;
  } else {
    for (std::size_t k = 0; 2 * k < hex.size(); ++k) {
      const auto byte = static_cast<std::uint64_t>(hex_value(hex[2 * k]) << 4 | hex_value(hex[2 * k + 1]));
      words[k / 8] |= byte << (8 * (k % 8));
    }
  }
  return TruthTable::from_words(n, std::move(words));
}

std::string table_to_json(const TruthTable& t) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = t.n();
  j["bits"] = encode_bits_hex(t);
  return j.dump();
}

TruthTable table_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed table JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("table JSON must be an object");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1) {
    throw InputError("table JSON must have \"version\": 1");
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError("table JSON needs integer \"n\"");
  if (!j.contains("bits") || !j["bits"].is_string()) throw InputError("table JSON needs string \"bits\"");
  return decode_bits_hex(j["n"].get<int>(), j["bits"].get<std::string>());
}

void write_table(const TruthTable& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << table_to_json(t) << '\n';
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

TruthTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return table_from_json(buf.str());
}

}  // namespace ilab
