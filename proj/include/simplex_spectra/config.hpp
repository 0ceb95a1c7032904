#pragma once

#include <map>
#include <string>
#include <string_view>

namespace simplex_spectra {

// Flat "key = value" text. '#' starts a comment, blank lines are ignored,
// keys are [A-Za-z0-9_-]+, dashes and underscores are interchangeable.
// Repeated keys are an error. Throws DomainError with the line number.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::string_view text);
ConfigMap load_config(const std::string& path);  // IoError if unreadable

// lower-case, '-' -> '_'
std::string normalize_key(std::string_view key);

}  // namespace simplex_spectra
