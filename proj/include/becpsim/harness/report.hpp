#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "becpsim/harness/config.hpp"

namespace becpsim::harness {

struct ExperimentReport {
  Protocol protocol = Protocol::Becp;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Seconds duration_s = 0.0;

  std::uint64_t confirmed_items = 0;
  std::uint64_t messages_sent = 0;
  // One entry per (node, block) commit event.
  std::vector<double> latency_samples;
  std::vector<std::uint64_t> chain_digests;

  std::size_t safety_violation_count = 0;
  std::vector<std::string> safety_violations;
};

std::uint64_t throughput(const ExperimentReport& r);
std::uint64_t overhead(const ExperimentReport& r);
// Mean of latency_samples; 0 when there are none.
double avg_latency(const ExperimentReport& r);

/// Summary row as read back from CSV.
struct ReportRow {
  std::string protocol;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  std::uint64_t confirmed_items = 0;
  std::uint64_t messages_sent = 0;
  double avg_latency_s = 0.0;
};

inline constexpr const char* kCsvHeader = "protocol,n,seed,duration_s,confirmed_items,messages_sent,avg_latency_s";

void write_csv(std::ostream& out, const std::vector<ExperimentReport>& reports);
std::vector<ReportRow> read_csv(std::istream& in);

// Structured form: the summary fields plus raw latency samples and chain digests.
void write_json(std::ostream& out, const std::vector<ExperimentReport>& reports);

ReportRow summarize(const ExperimentReport& r);

} // namespace becpsim::harness
