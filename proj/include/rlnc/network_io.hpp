#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rlnc/network.hpp"

namespace rlnc::network {

/// Malformed network file.  The message names the line and column for
/// syntax errors and the JSON path (e.g. "edges[2].tail") for schema errors.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Parses the network file format:
///
///   {
///     "name":    "butterfly",                      (optional)
///     "nodes":   ["s", "a", "t"],
///     "edges":   [{"id": "e1", "tail": "s", "head": "a"}, ...],
///     "sources": ["s"],
///     "sinks":   ["t"],
///     "demands": {"t": [1]}
///   }
///
/// `fallback_name` is used when the file has no "name".  The result is not
/// validated; see validate().
NetworkSpec parse_network(std::string_view text,
                          const std::string& fallback_name = "network");

/// Reads and parses a file; the name defaults to the file stem.
NetworkSpec load_network(const std::filesystem::path& path);

/// Serializes in the same format, two-space indented.
std::string to_json(const NetworkSpec& spec);

}  // namespace rlnc::network
