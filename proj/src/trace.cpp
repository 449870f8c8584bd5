#include "trace.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace amsvrg {

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_row(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::int64_t to_int(const std::string& s, std::size_t row) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') {
    throw ParseError("trace row " + std::to_string(row) + ": bad integer '" + s + "'");
  }
  return v;
}

double to_real(const std::string& s, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    throw ParseError("trace row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void EvalCounter::charge(std::int64_t calls, std::int64_t axis_calls) {
  if (axis_calls < 0 || calls < axis_calls) {
    throw InvalidArgument("charge: need calls >= axis_calls >= 0");
  }
  component_calls_ += calls;
  paper_axis_ += axis_calls;
}

void Trace::emit(TraceRecord record) {
  if (!std::isfinite(record.objective)) {
    throw NumericError("non-finite objective in " + record.method + " at stage " +
                       std::to_string(record.stage) + ", iter " +
                       std::to_string(record.iter));
  }
  if (!records_.empty() && record.component_calls < records_.back().component_calls) {
    throw InvalidArgument("trace records must be ordered by component_calls");
  }
  records_.push_back(std::move(record));
}

std::string format_trace_csv(const std::vector<TraceRecord>& records) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    if (r.method.find_first_of(",\n\r\"") != std::string::npos) {
      throw InvalidArgument("method tag '" + r.method + "' cannot appear in a csv cell");
    }
    out += r.method;
    out += ',' + std::to_string(r.stage);
    out += ',' + std::to_string(r.iter);
    out += ',' + std::to_string(r.component_calls);
    out += ',' + std::to_string(r.paper_axis);
    out += ',' + format_real(r.objective);
    out += ',';
    if (r.grad_norm) out += format_real(*r.grad_norm);
    out += ',' + format_real(r.wall_seconds);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> parse_trace_csv(std::string_view text) {
  std::vector<TraceRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceCsvHeader) throw ParseError("trace csv: unexpected header '" + line + "'");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_row(line);
    if (cells.size() != 8) {
      throw ParseError("trace row " + std::to_string(row) + ": expected 8 columns");
    }
    TraceRecord r;
    r.method = cells[0];
    r.stage = to_int(cells[1], row);
    r.iter = to_int(cells[2], row);
    r.component_calls = to_int(cells[3], row);
    r.paper_axis = to_int(cells[4], row);
    r.objective = to_real(cells[5], row);
    if (!cells[6].empty()) r.grad_norm = to_real(cells[6], row);
    r.wall_seconds = to_real(cells[7], row);
    records.push_back(std::move(r));
  }
  return records;
}

void write_csv(const std::vector<TraceRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trace '" + path.string() + "'");
  out << format_trace_csv(records);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_csv(const Trace& trace, const std::filesystem::path& path) {
  write_csv(trace.records(), path);
}

std::vector<TraceRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

}  // namespace amsvrg
