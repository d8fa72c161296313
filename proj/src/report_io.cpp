#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "upmsp/bench.hpp"

namespace upmsp {

namespace {

std::string optional_number(const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : std::string(); }

std::string file_safe(std::string s) {
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

std::string results_csv(const ExperimentReport& report, bool wall_time) {
  std::string out = "instance_id,algorithm,seed,best_cmax,evals,wall_ms,lb,rho_pct\n";
  for (const auto& r : report.runs) {
    const double wall = wall_time ? r.result.wall_ms : 0.0;
    const std::optional<double> rho_pct =
        r.lb > 0 ? std::optional<double>(rho(static_cast<double>(r.result.best_fitness), r.lb)) : std::nullopt;
    out += fmt::format("{},{},{},{},{},{:.3f},{:.4f},{}\n", r.instance_id, r.algorithm, r.seed, r.result.best_fitness,
                       r.result.evaluations_used, wall, r.lb, optional_number(rho_pct));
  }
  return out;
}

std::string aggregate_csv(const ExperimentReport& report) {
  std::string out = "instance_id,algorithm,mean,best,worst,median,std,rho_pct,delta_pct\n";
  for (const auto& c : report.cells)
    out += fmt::format("{},{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{},{}\n", c.instance_id, c.algorithm, c.stats.mean,
                       c.stats.best, c.stats.worst, c.stats.median, c.stats.std, optional_number(c.deviation.rho),
                       optional_number(c.deviation.delta));
  return out;
}

std::string trace_csv(const RunResult& result) {
  std::string out = "evals,best_cmax\n";
  for (const auto& p : result.trace) out += fmt::format("{},{}\n", p.evaluations, p.best);
  return out;
}

std::string trace_file_name(const RunRecord& record) {
  return file_safe(fmt::format("{}__{}__r{:02}.csv", record.instance_id, record.algorithm, record.replication));
}

std::string convergence_svg(const ExperimentReport& report, const std::string& instance_id) {
  // First replication of every algorithm on this instance.
  std::vector<const RunRecord*> runs;
  for (const auto& r : report.runs)
    if (r.instance_id == instance_id && r.replication == 0 && !r.result.trace.empty()) runs.push_back(&r);

  constexpr double width = 640, height = 400, margin = 50;
  long max_evals = 1;
  Time lo = std::numeric_limits<Time>::max(), hi = 0;
  for (const auto* r : runs)
    for (const auto& p : r->result.trace) {
      max_evals = std::max(max_evals, p.evaluations);
      lo = std::min(lo, p.best);
      hi = std::max(hi, p.best);
    }
  if (runs.empty()) lo = 0, hi = 1;
  if (hi == lo) hi = lo + 1;

  auto x_of = [&](long e) { return margin + (width - 2 * margin) * static_cast<double>(e) / max_evals; };
  auto y_of = [&](Time v) {
    return height - margin - (height - 2 * margin) * static_cast<double>(v - lo) / static_cast<double>(hi - lo);
  };

  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#000000"};
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">{3}: best makespan vs evaluations</text>\n"
      "<line x1=\"{2}\" y1=\"{4}\" x2=\"{5}\" y2=\"{4}\" stroke=\"black\"/>\n"
      "<line x1=\"{2}\" y1=\"{2}\" x2=\"{2}\" y2=\"{4}\" stroke=\"black\"/>\n"
      "<text x=\"{2}\" y=\"{6}\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n"
      "<text x=\"{5}\" y=\"{6}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{7}</text>\n"
      "<text x=\"5\" y=\"{4}\" font-family=\"sans-serif\" font-size=\"10\">{8}</text>\n"
      "<text x=\"5\" y=\"{2}\" font-family=\"sans-serif\" font-size=\"10\">{9}</text>\n",
      width, height, margin, instance_id, height - margin, width - margin, height - margin + 15, max_evals, lo, hi);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& trace = runs[i]->result.trace;
    const char* color = kColors[i % std::size(kColors)];
    std::string points;
    for (std::size_t p = 0; p < trace.size(); ++p) {
      // Step shape: hold the previous value until the next improvement.
      if (p > 0) points += fmt::format("{:.1f},{:.1f} ", x_of(trace[p].evaluations), y_of(trace[p - 1].best));
      points += fmt::format("{:.1f},{:.1f} ", x_of(trace[p].evaluations), y_of(trace[p].best));
    }
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{}\">{}</text>\n",
                       width - margin - 80, margin + 14 * (i + 1), color, runs[i]->algorithm);
  }
  svg += "</svg>\n";
  return svg;
}

void write_report(const ExperimentReport& report, const std::string& dir, bool wall_time) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root / "traces");
  fs::create_directories(root / "charts");
  write_file(root / "results.csv", results_csv(report, wall_time));
  write_file(root / "aggregate.csv", aggregate_csv(report));
  std::vector<std::string> instances;
  for (const auto& r : report.runs) {
    write_file(root / "traces" / trace_file_name(r), trace_csv(r.result));
    if (std::find(instances.begin(), instances.end(), r.instance_id) == instances.end())
      instances.push_back(r.instance_id);
  }
  for (const auto& id : instances)
    write_file(root / "charts" / (file_safe(id) + ".svg"), convergence_svg(report, id));
}

}  // namespace upmsp
