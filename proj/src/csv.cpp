#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "eqbearing/io.hpp"

namespace eqbearing {

const char* const kCsvHeader =
    "t,xi_x,xi_y,xi_z,y_x,y_y,y_z,outlier,xihat_eqv_x,xihat_eqv_y,xihat_eqv_z,"
    "xihat_naive_x,xihat_naive_y,xihat_naive_z,angle_err_eqv,angle_err_naive,V,Vdot";

namespace {

void put(std::string& line, double v) {
  line += ',';
  fmt::format_to(std::back_inserter(line), "{:.17g}", v);
}

void put(std::string& line, const Vector3& v) {
  for (int i = 0; i < 3; ++i) put(line, v[i]);
}

double parse_number(const std::string& field) {
  if (field == "nan") return std::nan("");
  std::size_t used = 0;
  const double v = std::stod(field, &used);
  if (used != field.size()) throw std::invalid_argument(field);
  return v;
}

}  // namespace

void write_csv(const std::vector<SampleRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  std::string line;
  for (const auto& r : records) {
    line.clear();
    fmt::format_to(std::back_inserter(line), "{:.17g}", r.t);
    put(line, r.xi);
    put(line, r.y);
    line += r.outlier ? ",1" : ",0";
    put(line, r.xihat_eqv);
    put(line, r.xihat_naive);
    put(line, r.angle_err_eqv);
    put(line, r.angle_err_naive);
    put(line, r.V);
    put(line, r.Vdot);
    line += '\n';
    out << line;
  }
}

void write_csv(const std::vector<SampleRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<SampleRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("read_csv: unexpected header");
  }
  std::vector<SampleRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 18) {
      throw std::runtime_error("read_csv: row " + std::to_string(row) + " has " +
                               std::to_string(fields.size()) + " fields");
    }
    std::vector<double> v;
    try {
      for (const auto& field : fields) v.push_back(parse_number(field));
    } catch (const std::exception&) {
      throw std::runtime_error("read_csv: malformed number in row " + std::to_string(row));
    }
    SampleRecord r;
    r.t = v[0];
    r.xi = {v[1], v[2], v[3]};
    r.y = {v[4], v[5], v[6]};
    r.outlier = v[7] != 0.0;
    r.xihat_eqv = {v[8], v[9], v[10]};
    r.xihat_naive = {v[11], v[12], v[13]};
    r.angle_err_eqv = v[14];
    r.angle_err_naive = v[15];
    r.V = v[16];
    r.Vdot = v[17];
    records.push_back(r);
  }
  return records;
}

void write_metrics_csv(const BatchMetrics& metrics, std::ostream& out) {
  out << "seed,final_err_eqv,final_err_naive,median_ss_eqv,median_ss_naive,"
         "converge_time_eqv,converge_time_naive,outliers\n";
  for (const auto& r : metrics.runs) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", r.seed,
                       r.final_err_eqv, r.final_err_naive, r.median_ss_eqv, r.median_ss_naive,
                       r.converge_time_eqv, r.converge_time_naive, r.outliers);
  }
}

}  // namespace eqbearing
