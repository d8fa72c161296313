#include "upmsp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace upmsp {

void Instance::check() const {
  if (machines < 1) throw std::invalid_argument("instance: machine count must be >= 1");
  if (jobs < 1) throw std::invalid_argument("instance: job count must be >= 1");
  if (processing.rows() != jobs || processing.cols() != machines)
    throw std::invalid_argument("instance: processing matrix must be jobs x machines");
  if ((processing.array() < 0).any()) throw std::invalid_argument("instance: negative processing time");
  if (static_cast<int>(setup.size()) != machines)
    throw std::invalid_argument("instance: one setup matrix per machine required");
  for (int k = 0; k < machines; ++k) {
    const auto& s = setup[k];
    if (s.rows() != jobs + 1 || s.cols() != jobs)
      throw std::invalid_argument(fmt::format("instance: setup matrix {} must be (jobs+1) x jobs", k + 1));
    if ((s.array() < 0).any())
      throw std::invalid_argument(fmt::format("instance: negative setup time on machine {}", k + 1));
    for (int j = 0; j < jobs; ++j)
      if (s(j + 1, j) != 0)
        throw std::invalid_argument(fmt::format("instance: nonzero diagonal on machine {}", k + 1));
  }
}

bool operator==(const Instance& a, const Instance& b) {
  return a.machines == b.machines && a.jobs == b.jobs && a.id == b.id &&
         a.processing == b.processing && a.setup == b.setup;
}

AdjustedTimes adjusted_times(const Instance& instance) {
  AdjustedTimes out;
  out.machines = instance.machines;
  out.jobs = instance.jobs;
  out.ap.reserve(instance.machines);
  for (int k = 0; k < instance.machines; ++k) {
    // Broadcast P[., k] across every predecessor row.
    TimeMatrix ap = instance.setup[k].rowwise() + instance.processing.col(k).transpose();
    for (int j = 0; j < instance.jobs; ++j) ap(j + 1, j) = 0;
    out.ap.push_back(std::move(ap));
  }
  return out;
}

void GeneratorSpec::check() const {
  if (machines < 1 || jobs < 1) throw std::invalid_argument("generator: machines and jobs must be >= 1");
  if (p_low < 0 || p_low > p_high) throw std::invalid_argument("generator: need 0 <= p_low <= p_high");
  if (s_low < 0 || s_low > s_high) throw std::invalid_argument("generator: need 0 <= s_low <= s_high");
}

std::string GeneratorSpec::id() const {
  return fmt::format("gen-m{}-n{}-p{}_{}-s{}_{}-seed{}", machines, jobs, p_low, p_high, s_low, s_high,
                     seed);
}

Instance generate(const GeneratorSpec& spec) {
  spec.check();
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<Time> p_dist(spec.p_low, spec.p_high);
  std::uniform_int_distribution<Time> s_dist(spec.s_low, spec.s_high);

  Instance inst;
  inst.machines = spec.machines;
  inst.jobs = spec.jobs;
  inst.id = spec.id();
  inst.processing.resize(spec.jobs, spec.machines);
  for (int j = 0; j < spec.jobs; ++j)
    for (int k = 0; k < spec.machines; ++k) inst.processing(j, k) = p_dist(rng);
  inst.setup.assign(spec.machines, TimeMatrix::Zero(spec.jobs + 1, spec.jobs));
  for (int k = 0; k < spec.machines; ++k)
    for (int i = 0; i <= spec.jobs; ++i)
      for (int j = 0; j < spec.jobs; ++j)
        if (i != j + 1) inst.setup[k](i, j) = s_dist(rng);
  return inst;
}

// ---------------------------------------------------------------------------
// UPMSP v1 text format

ParseError::ParseError(int line, const std::string& cause)
    : std::runtime_error(fmt::format("line {}: {}", line, cause)), line_(line), cause_(cause) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

  const Line& next(const char* expecting) {
    if (done()) throw ParseError(last_line(), fmt::format("unexpected end of input, expected {}", expecting));
    return lines_[pos_++];
  }

  static Time integer(const Line& line, const std::string& tok) {
    Time value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError(line.number, fmt::format("expected an integer, found '{}'", tok));
    return value;
  }

  TimeMatrix matrix(int rows, int cols, const char* block, std::vector<int>* row_lines = nullptr) {
    TimeMatrix m(rows, cols);
    if (row_lines) row_lines->clear();
    for (int r = 0; r < rows; ++r) {
      const Line& line = next(block);
      if (row_lines) row_lines->push_back(line.number);
      if (static_cast<int>(line.tokens.size()) != cols)
        throw ParseError(line.number, fmt::format("wrong matrix dimensions in block {}: expected {} values, found {}",
                                                  block, cols, line.tokens.size()));
      for (int c = 0; c < cols; ++c) {
        Time v = integer(line, line.tokens[c]);
        if (v < 0) throw ParseError(line.number, fmt::format("negative value {} in block {}", v, block));
        m(r, c) = v;
      }
    }
    return m;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

Instance parse(std::istream& in, std::string_view fallback_id) {
  Reader reader(tokenize(in));
  Instance inst;

  const Line& magic = reader.next("header");
  if (magic.tokens.size() != 2 || magic.tokens[0] != "UPMSP" || magic.tokens[1] != "v1")
    throw ParseError(magic.number, "malformed header: expected 'UPMSP v1'");

  const Line& dims = reader.next("dimensions");
  if (dims.tokens.size() != 4 || dims.tokens[0] != "m" || dims.tokens[2] != "n")
    throw ParseError(dims.number, "malformed header: expected 'm <int> n <int>'");
  Time m = Reader::integer(dims, dims.tokens[1]);
  Time n = Reader::integer(dims, dims.tokens[3]);
  if (m < 1 || n < 1) throw ParseError(dims.number, "malformed header: m and n must be positive");
  inst.machines = static_cast<int>(m);
  inst.jobs = static_cast<int>(n);

  inst.id = std::string(fallback_id);
  if (!reader.done() && reader.peek().tokens[0] == "name") {
    const Line& name = reader.next("name");
    if (name.tokens.size() != 2) throw ParseError(name.number, "malformed header: expected 'name <id>'");
    inst.id = name.tokens[1];
  }

  const Line& p = reader.next("block P");
  if (p.tokens.size() != 1 || p.tokens[0] != "P") throw ParseError(p.number, "malformed header: expected block 'P'");
  inst.processing = reader.matrix(inst.jobs, inst.machines, "P");

  for (int k = 0; k < inst.machines; ++k) {
    const Line& s = reader.next("block S");
    if (s.tokens.size() != 2 || s.tokens[0] != "S" || Reader::integer(s, s.tokens[1]) != k + 1)
      throw ParseError(s.number, fmt::format("malformed header: expected block 'S {}'", k + 1));
    std::vector<int> row_lines;
    inst.setup.push_back(reader.matrix(inst.jobs + 1, inst.jobs, "S", &row_lines));
    for (int j = 0; j < inst.jobs; ++j)
      if (inst.setup.back()(j + 1, j) != 0)
        throw ParseError(row_lines[j + 1],
                         fmt::format("nonzero diagonal in block S {} at job {}", k + 1, j + 1));
  }

  if (!reader.done()) throw ParseError(reader.peek().number, "trailing data after last setup block");
  return inst;
}

Instance parse(std::string_view text, std::string_view fallback_id) {
  std::istringstream in{std::string(text)};
  return parse(in, fallback_id);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem.erase(0, slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.erase(dot);
  return parse(in, stem);
}

namespace {

template <typename Derived>
void write_rows(std::ostream& out, const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m(r, c);
    }
    out << '\n';
  }
}

bool is_token(const std::string& s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) || c == '#'; });
}

}  // namespace

void serialize(const Instance& instance, std::ostream& out) {
  out << "UPMSP v1\n";
  out << "m " << instance.machines << " n " << instance.jobs << '\n';
  if (is_token(instance.id)) out << "name " << instance.id << '\n';
  out << "P\n";
  write_rows(out, instance.processing);
  for (int k = 0; k < instance.machines; ++k) {
    out << "S " << k + 1 << '\n';
    write_rows(out, instance.setup[k]);
  }
}

std::string serialize(const Instance& instance) {
  std::ostringstream out;
  serialize(instance, out);
  return out.str();
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  serialize(instance, out);
}

}  // namespace upmsp
