#include "becpsim/harness/report.hpp"

#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace becpsim::harness {

std::uint64_t throughput(const ExperimentReport& r) { return r.confirmed_items; }

std::uint64_t overhead(const ExperimentReport& r) { return r.messages_sent; }

double avg_latency(const ExperimentReport& r) {
  if (r.latency_samples.empty()) return 0.0;
  const double sum = std::accumulate(r.latency_samples.begin(), r.latency_samples.end(), 0.0);
  return sum / static_cast<double>(r.latency_samples.size());
}

ReportRow summarize(const ExperimentReport& r) {
  return ReportRow{to_string(r.protocol), r.n,           r.seed,         r.duration_s,
                   r.confirmed_items,     r.messages_sent, avg_latency(r)};
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    const ReportRow row = summarize(r);
    out << row.protocol << ',' << row.n << ',' << row.seed << ',' << fixed(row.duration_s, 3) << ','
        << row.confirmed_items << ',' << row.messages_sent << ',' << fixed(row.avg_latency_s, 6) << '\n';
  }
}

std::vector<ReportRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing or unexpected CSV header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell[7];
    for (auto& c : cell) {
      if (!std::getline(fields, c, ',')) throw std::invalid_argument("short CSV row: " + line);
    }
    ReportRow row;
    row.protocol = cell[0];
    row.n = std::stoull(cell[1]);
    row.seed = std::stoull(cell[2]);
    row.duration_s = std::stod(cell[3]);
    row.confirmed_items = std::stoull(cell[4]);
    row.messages_sent = std::stoull(cell[5]);
    row.avg_latency_s = std::stod(cell[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_json(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : reports) {
    runs.push_back({
        {"protocol", to_string(r.protocol)},
        {"n", r.n},
        {"seed", r.seed},
        {"duration_s", r.duration_s},
        {"confirmed_items", r.confirmed_items},
        {"messages_sent", r.messages_sent},
        {"avg_latency_s", avg_latency(r)},
        {"latency_samples", r.latency_samples},
        {"chain_digests", r.chain_digests},
        {"safety_violations", r.safety_violation_count},
    });
  }
  out << nlohmann::json{{"runs", runs}}.dump(2) << '\n';
}

} // namespace becpsim::harness
