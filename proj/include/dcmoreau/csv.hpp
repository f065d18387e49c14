#pragma once

#include <string>
#include <vector>

#include "dcmoreau/solvers.hpp"

namespace dcm::csv {

/// 17 significant digits, so every double round-trips exactly.
std::string format_double(double v);
/// Coordinates joined with ';'.
std::string format_vector(const Vector& v);

/// Comma-joined row terminated by LF. Fields are written verbatim.
std::string row(const std::vector<std::string>& fields);

extern const char* const kTraceHeader;
std::string trace_csv(const std::vector<IterateRecord>& trace);

/// Writes `content` to `path`, creating parent directories; throws Io.
void write_file(const std::string& path, const std::string& content);

}  // namespace dcm::csv
