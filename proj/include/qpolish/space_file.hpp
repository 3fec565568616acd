#pragma once

#include "qpolish/space.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qpolish {

/// A malformed space description, located at a 1-based line.
class SpaceFileError : public std::runtime_error {
 public:
  SpaceFileError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct SpaceFile {
  std::string kind;  // finite, generator or table
  SpacePtr space;
  /// Present for kind finite.
  std::optional<FiniteSpace> finite;
  /// Default truncation depth from an optional "depth <n>" line.
  std::optional<std::size_t> depth;
};

/// Line-oriented description; '#' starts a comment. An optional
/// "depth <n>" line right after the kind line sets a default depth.
///
///   kind finite            kind generator          kind table
///   points 3               gen plus_generic S1     points 2
///   subbasic 0: 1 2                                subbasics 2
///   subbasic 1: 2                                  10
///                                                  11
SpaceFile parse_space_file(std::string_view text, const std::string& source = "<input>");
SpaceFile load_space_file(const std::string& path);

}  // namespace qpolish
