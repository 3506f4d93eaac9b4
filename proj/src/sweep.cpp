#include "tunnel/sweep.hpp"

#include "tunnel/errors.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace tunnel {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

// A CSV field never contains commas or quotes in our status strings.
std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '"', '\'');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

bool sweep_order(const ObservableReport& a, const ObservableReport& b) {
  return a.gamma != b.gamma ? a.gamma < b.gamma : a.E0 < b.E0;
}

double parse_field(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error("sweep.csv: bad number '" + s + "'");
  return v;
}

}  // namespace

const std::string& sweep_csv_header() {
  static const std::string header = "E0,gamma,x_in,x_exit,tau_A,tau_MT,p0_m1,p0_m2,p_fq,tau_2,tau_sub_1d,status";
  return header;
}

std::string format_sweep_row(const ObservableReport& r) {
  std::string line;
  for (double v : {r.E0, r.gamma, r.x_in, r.x_exit, r.tau_A, r.tau_MT, r.p0_method1, r.p0_method2, r.p_fq, r.tau_2,
                   r.tau_sub_1d})
    line += number(v) + ",";
  return line + sanitize(r.status);
}

std::vector<ObservableReport> read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != sweep_csv_header()) throw Error(path.string() + ": unexpected header");
  std::vector<ObservableReport> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 12) throw Error(path.string() + ": row with " + std::to_string(f.size()) + " fields");
    ObservableReport r;
    double* slots[] = {&r.E0,         &r.gamma,      &r.x_in, &r.x_exit, &r.tau_A,     &r.tau_MT,
                       &r.p0_method1, &r.p0_method2, &r.p_fq, &r.tau_2,  &r.tau_sub_1d};
    for (std::size_t k = 0; k < 11; ++k) *slots[k] = parse_field(f[k]);
    r.status = f[11];
    rows.push_back(r);
  }
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, std::vector<ObservableReport> rows) {
  std::stable_sort(rows.begin(), rows.end(), sweep_order);
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  os << sweep_csv_header() << '\n';
  for (const auto& r : rows) os << format_sweep_row(r) << '\n';
}

void append_sweep_row(const std::filesystem::path& path, const ObservableReport& row) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream os(path, std::ios::app);
  if (!os) throw Error("cannot write " + path.string());
  if (fresh) os << sweep_csv_header() << '\n';
  os << format_sweep_row(row) << '\n';
}

std::string trace_file_name(double e0, double gamma) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "trace_" << e0 << "_" << gamma << ".csv";
  return os.str();
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<DetectorRecord>& records) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  os << "t";
  for (std::size_t k = 0; k < records.size(); ++k) os << ",j_" << k << ",rho_" << k;
  os << '\n';
  if (records.empty()) return;
  const std::size_t rows = records.front().times.size();
  for (std::size_t i = 0; i < rows; ++i) {
    os << number(records.front().times[i]);
    for (const auto& r : records) os << ',' << number(r.current[i]) << ',' << number(r.density[i]);
    os << '\n';
  }
}

std::vector<PointResult> run_sweep(const RunConfig& cfg, unsigned threads) {
  if (cfg.e0_over_z3.empty() || cfg.gammas.empty()) throw ConfigError("sweep: empty parameter list");
  struct Task {
    double ratio, gamma;
  };
  std::vector<Task> tasks;
  for (double g : cfg.gammas)
    for (double r : cfg.e0_over_z3) tasks.push_back({r, g});

  std::vector<PointResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
      results[i] = run_point(cfg.settings, tasks[i].ratio, tasks[i].gamma);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::stable_sort(results.begin(), results.end(),
                   [](const PointResult& a, const PointResult& b) { return sweep_order(a.report, b.report); });
  return results;
}

}  // namespace tunnel
