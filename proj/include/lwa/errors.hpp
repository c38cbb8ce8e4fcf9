#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lwa {

/// Malformed wire bytes. `offset` is the byte position the parser was at.
class DecodeError : public std::runtime_error {
  public:
    enum class Kind { Truncated, ZeroLi, WrongEthertype };

    DecodeError(Kind kind, std::size_t offset, const std::string& what)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
          kind_(kind),
          offset_(offset) {}

    Kind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

  private:
    Kind kind_;
    std::size_t offset_;
};

/// Invalid scenario or module configuration. `field` is the config path,
/// e.g. "lte.tb_bytes_per_tti".
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace lwa
