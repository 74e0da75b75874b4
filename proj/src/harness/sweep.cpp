#include "becpsim/harness/sweep.hpp"

#include <charconv>
#include <exception>
#include <stdexcept>
#include <string>

#include "becpsim/harness/experiment.hpp"

namespace becpsim::harness {

std::vector<SimConfig> seed_range(const SimConfig& base, std::uint64_t first, std::uint64_t count) {
  std::vector<SimConfig> out(count, base);
  for (std::uint64_t i = 0; i < count; ++i) out[i].seed = first + i;
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad seed value: '" + std::string(text) + "'");
  }
  return v;
}

} // namespace

std::pair<std::uint64_t, std::uint64_t> parse_seeds(std::string_view text, std::uint64_t first) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    const auto count = parse_u64(text);
    if (count == 0) throw std::invalid_argument("seed count must be positive");
    return {first, count};
  }
  const auto lo = parse_u64(text.substr(0, dash));
  const auto hi = parse_u64(text.substr(dash + 1));
  if (hi < lo) throw std::invalid_argument("empty seed range: " + std::string(text));
  return {lo, hi - lo + 1};
}

SweepMeans mean_over(const std::vector<ExperimentReport>& reports) {
  SweepMeans m;
  m.runs = reports.size();
  if (reports.empty()) return m;
  for (const auto& r : reports) {
    m.confirmed_items += static_cast<double>(throughput(r));
    m.messages_sent += static_cast<double>(overhead(r));
    m.avg_latency_s += avg_latency(r);
  }
  const auto n = static_cast<double>(reports.size());
  m.confirmed_items /= n;
  m.messages_sent /= n;
  m.avg_latency_s /= n;
  return m;
}

std::vector<ExperimentReport> run_sweep_serial(const std::vector<SimConfig>& configs) {
  std::vector<ExperimentReport> out;
  out.reserve(configs.size());
  for (const auto& c : configs) out.push_back(run_experiment(c));
  return out;
}

std::vector<ExperimentReport> run_sweep(const std::vector<SimConfig>& configs) {
  // Validate up front so a bad config throws on the calling thread.
  for (const auto& c : configs) c.validate();

  std::vector<ExperimentReport> out(configs.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_experiment(configs[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

} // namespace becpsim::harness
