#pragma once

#include <string>

namespace omcond {

// Shortest representation that round-trips exactly (never more than 17
// significant digits); the single float->text gate for every output format,
// so identical runs serialize identically byte for byte.
std::string fmt_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace omcond
