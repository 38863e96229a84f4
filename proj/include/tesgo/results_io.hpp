#pragma once

// CSV persistence for benchmark runs and profile tables. Plain comma
// separation (no field ever contains a comma), LF line endings, '.' decimal
// separator, reals at 10 significant digits. Readers strip a trailing '\r'
// so files edited on other platforms still parse, but the header must match
// the schema exactly.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tesgo/metrics.hpp"

namespace tesgo {

struct ResultRow {
  std::string solver;
  std::string problem;
  std::size_t n = 0;
  long long start_id = 0;
  double f_opt = 0.0;
  std::optional<double> f_star;
  std::optional<double> rel_error;
  long long n_f1 = 0;
  long long n_f2 = 0;
  long long n_g1 = 0;
  long long n_g2 = 0;
  double wall_seconds = 0.0;
  std::string status;
};

inline constexpr const char* kResultsHeader =
    "solver,problem,n,start_id,f_opt,f_star,rel_error,n_f1,n_f2,n_g1,n_g2,wall_seconds,status";

inline constexpr const char* kProfileHeader = "measure,solver,tau,value";

namespace detail {

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return std::string(buf);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline double parse_real(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("results csv: bad real '" + s + "' in " + where);
  return v;
}

inline long long parse_int(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("results csv: bad integer '" + s + "' in " + where);
  return v;
}

}  // namespace detail

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsHeader << "\n";
  for (const auto& r : rows) {
    out << r.solver << ',' << r.problem << ',' << r.n << ',' << r.start_id << ','
        << detail::format_real(r.f_opt) << ','
        << (r.f_star ? detail::format_real(*r.f_star) : std::string()) << ','
        << (r.rel_error ? detail::format_real(*r.rel_error) : std::string()) << ',' << r.n_f1
        << ',' << r.n_f2 << ',' << r.n_g1 << ',' << r.n_g2 << ','
        << detail::format_real(r.wall_seconds) << ',' << r.status << "\n";
  }
}

inline void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_results_csv(out, rows);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::vector<ResultRow> read_results_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("results csv: '" + origin + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader)
    throw std::invalid_argument("results csv: '" + origin + "' has header '" + line +
                                "', expected '" + kResultsHeader + "'");
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (fields.size() != 13)
      throw std::invalid_argument("results csv: '" + origin + "' line " +
                                  std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields, expected 13");
    const std::string where = origin + ":" + std::to_string(line_no);
    ResultRow r;
    r.solver = fields[0];
    r.problem = fields[1];
    long long n = detail::parse_int(fields[2], where);
    if (n < 1) throw std::invalid_argument("results csv: nonpositive n in " + where);
    r.n = static_cast<std::size_t>(n);
    r.start_id = detail::parse_int(fields[3], where);
    r.f_opt = detail::parse_real(fields[4], where);
    if (!fields[5].empty()) r.f_star = detail::parse_real(fields[5], where);
    if (!fields[6].empty()) r.rel_error = detail::parse_real(fields[6], where);
    r.n_f1 = detail::parse_int(fields[7], where);
    r.n_f2 = detail::parse_int(fields[8], where);
    r.n_g1 = detail::parse_int(fields[9], where);
    r.n_g2 = detail::parse_int(fields[10], where);
    r.wall_seconds = detail::parse_real(fields[11], where);
    r.status = fields[12];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_results_csv(in, path);
}

inline RunRecord to_run_record(const ResultRow& r) {
  RunRecord rec;
  rec.solver = r.solver;
  rec.problem = r.problem;
  rec.n = r.n;
  rec.start_id = r.start_id;
  rec.f_opt = r.f_opt;
  rec.counters.n_f1 = r.n_f1;
  rec.counters.n_f2 = r.n_f2;
  rec.counters.n_g1 = r.n_g1;
  rec.counters.n_g2 = r.n_g2;
  rec.wall_time = r.wall_seconds;
  rec.status = r.status;
  return rec;
}

inline void write_profile_csv(std::ostream& out, const ProfileTable& table) {
  out << kProfileHeader << "\n";
  for (std::size_t s = 0; s < table.solvers.size(); ++s)
    for (std::size_t j = 0; j < table.taus.size(); ++j)
      out << table.measure << ',' << table.solvers[s] << ',' << detail::format_real(table.taus[j])
          << ',' << detail::format_real(table.values[s][j]) << "\n";
}

inline void write_profile_csv(const std::string& path, const ProfileTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_profile_csv(out, table);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace tesgo
