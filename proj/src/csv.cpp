#include "dcmoreau/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dcmoreau/error.hpp"

namespace dcm::csv {

const char* const kTraceHeader = "n,x,phi_smooth,phi_orig,step_norm,grad_gap_norm,theta_n";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_double(v(i));
  }
  return out;
}

std::string row(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

std::string trace_csv(const std::vector<IterateRecord>& trace) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& r : trace) {
    out += row({std::to_string(r.n), format_vector(r.x), format_double(r.phi_smooth),
                format_double(r.phi_orig), format_double(r.step_norm),
                format_double(r.grad_gap_norm), format_double(r.theta)});
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

}  // namespace dcm::csv
