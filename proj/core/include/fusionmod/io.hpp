#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fusionmod/module.hpp"
#include "fusionmod/ring.hpp"

namespace fusionmod {

enum class ModuleFormat { Json, Text };

// Throws Error on anything but "json" or "text".
ModuleFormat parse_module_format(std::string_view name);

// Hex SHA-256 of the canonical ring JSON (the JSON without its "hash" member).
std::string ring_hash(const FusionRing& R);

// Canonical JSON including "hash". Keys sorted, no insignificant whitespace beyond a final newline.
std::string save_ring(const FusionRing& R);
// Parses, checks the hash when present, and validates. Throws Error.
RingPtr load_ring(std::string_view bytes);

// Modules must all be over R; each one is validated first.
std::string save_modules(const std::vector<FusionModule>& modules, const FusionRing& R, ModuleFormat format);
// The file's ring hash must match R. Every module is validated; the first failure names its index.
std::vector<FusionModule> load_modules(std::string_view bytes, const RingPtr& R, ModuleFormat format);
// Picks the format from the first non-blank character.
std::vector<FusionModule> load_modules(std::string_view bytes, const RingPtr& R);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace fusionmod
