#include "ilab/core/errors.hpp"

#include <utility>

namespace ilab {

ParseError::ParseError(const std::string& message, std::size_t offset, std::size_t line,
                       std::size_t column, std::vector<std::string> expected)
    : InputError(message), offset_(offset), line_(line), column_(column),
      expected_(std::move(expected)) {}

}  // namespace ilab
