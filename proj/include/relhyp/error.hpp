#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relhyp {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct range_error : error {
  using error::error;
};
struct domain_error : error {
  using error::error;
};
struct unknown_symbol : error {
  using error::error;
};
struct interface_error : error {
  using error::error;
};
struct out_of_ball : error {
  using error::error;
};
struct incomplete_ball : error {
  using error::error;
};
struct resource_error : error {
  using error::error;
};
struct hypothesis_error : error {
  using error::error;
};
struct path_error : error {
  using error::error;
};

struct parse_error : error {
  parse_error(std::string const& msg, std::size_t line, std::size_t column)
      : error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace relhyp
