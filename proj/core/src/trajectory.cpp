#include "vqco/trajectory.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vqco/io.hpp"

namespace vqco {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Flow: return "flow";
    case Phase::Jacobi: return "jacobi";
    case Phase::Done: return "done";
  }
  return "done";
}

Phase parse_phase(std::string_view name) {
  for (auto p : {Phase::Flow, Phase::Jacobi, Phase::Done}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown phase '" + std::string(name) + "'");
}

int Trajectory::max_active_count() const {
  int best = 0;
  for (const auto& r : records) best = std::max(best, r.active_count);
  return best;
}

int Trajectory::iterations_to_converge() const {
  for (const auto& r : records) {
    if (r.ar >= 1.0 - 1e-9) return r.iteration;
  }
  return -1;
}

double Trajectory::ar_error_at(int iteration) const {
  if (records.empty()) throw std::logic_error("empty trajectory");
  const auto it = std::find_if(records.rbegin(), records.rend(),
                               [&](const TrajectoryRecord& r) { return r.iteration <= iteration; });
  return it == records.rend() ? records.front().ar_error() : it->ar_error();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& r : trajectory.records) {
    out << r.iteration << ',' << format_real(r.tau) << ',' << to_string(r.phase) << ',' << format_real(r.energy)
        << ',' << format_real(r.ar) << ',' << format_real(r.ar_error()) << ',' << format_real(r.optimal_norm)
        << ',' << r.active_count << ',' << format_real(r.entropy) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream row(line);
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& cell) {
  if (cell == "nan" || cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("bad number '" + cell + "'");
  return v;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trajectory file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryCsvHeader) throw std::invalid_argument("unexpected trajectory header: " + line);
  Trajectory t;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 9) throw std::invalid_argument("trajectory line " + std::to_string(line_no) + " has " +
                                                       std::to_string(cells.size()) + " fields");
    try {
      TrajectoryRecord r;
      r.iteration = std::stoi(cells[0]);
      r.tau = parse_real(cells[1]);
      r.phase = parse_phase(cells[2]);
      r.energy = parse_real(cells[3]);
      r.ar = parse_real(cells[4]);
      r.optimal_norm = parse_real(cells[6]);
      r.active_count = std::stoi(cells[7]);
      r.entropy = parse_real(cells[8]);
      t.records.push_back(r);
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("trajectory line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return t;
}

void write_theta_csv(std::ostream& out, const Trajectory& trajectory) {
  for (std::size_t k = 0; k < trajectory.thetas.size(); ++k) {
    out << (k < trajectory.records.size() ? trajectory.records[k].iteration : static_cast<int>(k));
    for (const double v : trajectory.thetas[k]) out << ',' << format_real(v);
    out << '\n';
  }
}

}  // namespace vqco
