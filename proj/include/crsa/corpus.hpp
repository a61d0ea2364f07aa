#pragma once

#include "crsa/spec_parser.hpp"

#include <string>
#include <vector>

namespace crsa {

/// Identifiers of the bundled example systems, in a fixed order.
std::vector<std::string> corpus_ids();

/// Directory holding the bundled .crs files. The build bakes in a
/// default; the CRSA_CORPUS_DIR environment variable overrides it.
std::string corpus_dir();

std::string corpus_path(const std::string &id);

/// Parses the bundled system; throws std::runtime_error when the file is
/// missing or does not parse cleanly.
System load_corpus_system(const std::string &id);

} // namespace crsa
