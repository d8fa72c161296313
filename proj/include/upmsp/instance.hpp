#ifndef UPMSP_INSTANCE_HPP
#define UPMSP_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "upmsp/types.hpp"

namespace upmsp {

/// Problem data for one unrelated parallel machine instance.
///
/// Jobs and machines are 0-based in memory. Setup matrices have n+1 rows:
/// row 0 holds the initial setup before a machine's first job, row i+1 holds
/// setups after job i. Column j is the successor job j.
struct Instance {
  int machines = 0;
  int jobs = 0;
  TimeMatrix processing;            // jobs x machines
  std::vector<TimeMatrix> setup;    // per machine, (jobs+1) x jobs
  std::string id;

  Time processing_time(int job, int machine) const { return processing(job, machine); }
  Time initial_setup(int machine, int job) const { return setup[machine](0, job); }
  Time setup_time(int machine, int prev, int job) const { return setup[machine](prev + 1, job); }

  /// Throws std::invalid_argument naming the first broken invariant.
  void check() const;

  friend bool operator==(const Instance& a, const Instance& b);
};

/// AP = setup + processing, indexed like Instance::setup.
struct AdjustedTimes {
  int machines = 0;
  int jobs = 0;
  std::vector<TimeMatrix> ap;

  /// Adjusted time of `job` when it opens `machine`.
  Time first(int machine, int job) const { return ap[machine](0, job); }
  /// Adjusted time of `job` directly after `prev` on `machine`.
  Time after(int machine, int prev, int job) const { return ap[machine](prev + 1, job); }
  /// Row-indexed access: row 0 is the dummy predecessor, row i+1 is job i.
  Time at(int machine, int row, int job) const { return ap[machine](row, job); }
};

AdjustedTimes adjusted_times(const Instance& instance);

/// Bounds are inclusive.
struct GeneratorSpec {
  std::uint64_t seed = 0;
  int machines = 2;
  int jobs = 20;
  Time p_low = 50;
  Time p_high = 100;
  Time s_low = 50;
  Time s_high = 100;

  void check() const;
  std::string id() const;
};

Instance generate(const GeneratorSpec& spec);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& cause);
  int line() const noexcept { return line_; }
  const std::string& cause() const noexcept { return cause_; }

 private:
  int line_;
  std::string cause_;
};

/// Reads the `UPMSP v1` text format. `fallback_id` names the instance when
/// the text carries no `name` line.
Instance parse(std::istream& in, std::string_view fallback_id = {});
Instance parse(std::string_view text, std::string_view fallback_id = {});
Instance load_instance(const std::string& path);

void serialize(const Instance& instance, std::ostream& out);
std::string serialize(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace upmsp

#endif  // UPMSP_INSTANCE_HPP
