#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ilab/core/truth_table.hpp"

namespace ilab {

/// Hex payload of the table file: byte k = bits [8k, 8k+8) written as two hex digits
/// (high nibble first); tables with fewer than 8 entries use a single nibble.
std::string encode_bits_hex(const TruthTable& t);
TruthTable decode_bits_hex(int n, std::string_view hex);

/// {"version":1,"n":<int>,"bits":"<hex>"}
std::string table_to_json(const TruthTable& t);
TruthTable table_from_json(std::string_view text);

void write_table(const TruthTable& t, const std::filesystem::path& path);
TruthTable read_table(const std::filesystem::path& path);

}  // namespace ilab
