#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amsvrg {

// Two views of optimization work:
//   component_calls  every single-component gradient actually evaluated
//   paper_axis       n per full gradient plus b per mini-batch step
// An AMSVRG / SVRG inner step evaluates the batch at two points, so it
// charges 2b calls but b on the evaluation axis.
class EvalCounter {
 public:
  void charge(std::int64_t calls, std::int64_t axis_calls);

  std::int64_t component_calls() const noexcept { return component_calls_; }
  std::int64_t paper_axis() const noexcept { return paper_axis_; }

 private:
  std::int64_t component_calls_ = 0;
  std::int64_t paper_axis_ = 0;
};

struct TraceRecord {
  std::string method;
  std::int64_t stage = 0;
  std::int64_t iter = 0;
  std::int64_t component_calls = 0;
  std::int64_t paper_axis = 0;
  double objective = 0.0;
  std::optional<double> grad_norm;
  double wall_seconds = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

inline constexpr std::string_view kTraceCsvHeader =
    "method,stage,iter,component_calls,paper_axis,objective,grad_norm,wall_seconds";

class Trace {
 public:
  // Rejects non-finite objectives (NumericError) and records whose
  // component_calls go backwards (InvalidArgument).
  void emit(TraceRecord record);

  const std::vector<TraceRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }
  const TraceRecord& back() const { return records_.back(); }

 private:
  std::vector<TraceRecord> records_;
};

std::string format_trace_csv(const std::vector<TraceRecord>& records);
std::vector<TraceRecord> parse_trace_csv(std::string_view text);

void write_csv(const Trace& trace, const std::filesystem::path& path);
void write_csv(const std::vector<TraceRecord>& records, const std::filesystem::path& path);
std::vector<TraceRecord> read_csv(const std::filesystem::path& path);

}  // namespace amsvrg
