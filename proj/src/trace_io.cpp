#include "drsplit/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace drsplit {

namespace {

std::string format_double(double v) {
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void append_vector(std::string& row, const Vector& v) {
  for (int i = 0; i < v.dim(); ++i) {
    row += ',';
    row += format_double(v[i]);
  }
}

}  // namespace

void write_trace_csv(const DrTrace& trace, const std::string& path) {
  if (trace.records.empty()) throw UsageError("write_trace_csv: empty trace");
  const int d = trace.records.front().governing.dim();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open trace file for writing: " + path);

  std::string header = "n";
  for (int i = 0; i < d; ++i) header += ",governing_" + std::to_string(i);
  for (int i = 0; i < d; ++i) header += ",shadowA_" + std::to_string(i);
  for (int i = 0; i < d; ++i) header += ",shadowB_" + std::to_string(i);
  header += ",residual,gapdiff_norm";
  out << header << '\n';

  for (const TraceRecord& r : trace.records) {
    std::string row = std::to_string(r.n);
    append_vector(row, r.governing);
    append_vector(row, r.shadow_a);
    append_vector(row, r.shadow_b);
    row += ',';
    row += format_double(r.residual);
    row += ',';
    row += format_double(norm(r.gap_diff));
    out << row << '\n';
  }
  if (!out) throw IoError("failed while writing trace file: " + path);
}

std::pair<std::vector<std::string>, std::vector<std::vector<double>>>
read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace file for reading: " + path);

  std::string line;
  if (!std::getline(in, line)) throw IoError("trace file is empty: " + path);
  std::vector<std::string> header;
  {
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) header.push_back(field);
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      double v = 0.0;
      const std::from_chars_result r =
          std::from_chars(field.data(), field.data() + field.size(), v);
      if (r.ptr != field.data() + field.size()) {
        throw IoError("trace file has a non-numeric field: " + field);
      }
      row.push_back(v);
    }
    if (row.size() != header.size()) {
      throw IoError("trace file row width does not match the header");
    }
    rows.push_back(std::move(row));
  }
  return {std::move(header), std::move(rows)};
}

}  // namespace drsplit
