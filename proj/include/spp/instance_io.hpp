// JSON file formats for instances and matchings.
//
// Instance:
//   {"L": 5, "S": 3,
//    "constraints": [[1, 2], [2, 1]],          directed edges, 1-based
//    "ranking": {"RL": [[...], ...], "RS": [[...], ...]}}   or
//    "utility": {"U": [[...], ...]}
// Matrices are L rows of S entries (a flat row-major array of L*S numbers is
// also accepted on input). Reals are written with 17 significant digits.
//
// Matching:
//   {"assignment": [1, 3, 2, ...]}             1-based channels, S = virtual

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spp/core.hpp"

namespace spp {

/// Malformed input. The message carries the source name and line, or the
/// path of the offending field.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// "%.17g" rendering used by every file writer in the project.
std::string format_real(double value);

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(std::string_view text, const std::string& source = "<input>");
void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

std::string matching_to_json(const Matching& matching);
/// Checks the assignment is total for `inst` (ValidationError otherwise).
Matching matching_from_json(std::string_view text, const Instance& inst,
                            const std::string& source = "<input>");
void save_matching(const Matching& matching, const std::filesystem::path& path);
Matching load_matching(const std::filesystem::path& path, const Instance& inst);

/// Whole-file read; throws std::runtime_error if the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace spp
