#include "optdes/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "optdes/errors.hpp"

namespace optdes {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DesignTable design_table(const Design &d) {
  const int q = d.q;
  const int k = d.support_size();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double *pa = d.support_point(a);
    const double *pb = d.support_point(b);
    return std::lexicographical_compare(pa, pa + q, pb, pb + q);
  });

  DesignTable t;
  t.q = q;
  t.points.reserve(static_cast<std::size_t>(k) * q);
  t.weights.reserve(k);
  for (int r : order) {
    const double *p = d.support_point(r);
    t.points.insert(t.points.end(), p, p + q);
    t.weights.push_back(d.support_weights[r]);
  }
  return t;
}

std::string design_csv(const DesignTable &t) {
  std::string out;
  for (int j = 0; j < t.q; ++j) {
    out += 'x';
    out += std::to_string(j + 1);
    out += ',';
  }
  out += "weight\n";
  for (int i = 0; i < t.rows(); ++i) {
    const double *p = t.point(i);
    for (int j = 0; j < t.q; ++j) {
      out += format_double(p[j]);
      out += ',';
    }
    out += format_double(t.weights[i]);
    out += '\n';
  }
  return out;
}

void write_design_csv(const std::string &path, const DesignTable &t) {
  write_text_file(path, design_csv(t));
}

namespace {

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_number(const std::string &field, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception &) {
    throw ConfigError("design CSV line " + std::to_string(line_no) +
                      ": '" + field + "' is not a number");
  }
}

}  // namespace

DesignTable parse_design_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("design CSV is empty");

  const std::vector<std::string> header = split_fields(line);
  const int q = static_cast<int>(header.size()) - 1;
  if (q < 1 || header.back() != "weight")
    throw ConfigError("design CSV header must be x1,...,xq,weight; got '" +
                      line + "'");
  for (int j = 0; j < q; ++j)
    if (header[j] != "x" + std::to_string(j + 1))
      throw ConfigError("design CSV header column " + std::to_string(j + 1) +
                        " must be x" + std::to_string(j + 1) + "; got '" +
                        header[j] + "'");

  DesignTable t;
  t.q = q;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_fields(line);
    if (static_cast<int>(fields.size()) != q + 1)
      throw ConfigError("design CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(q + 1) + " fields, got " +
                        std::to_string(fields.size()));
    for (int j = 0; j < q; ++j)
      t.points.push_back(parse_number(fields[j], line_no));
    t.weights.push_back(parse_number(fields[q], line_no));
  }
  if (t.weights.empty()) throw ConfigError("design CSV has no data rows");
  return t;
}

DesignTable read_design_csv(const std::string &path) {
  return parse_design_csv(read_text_file(path));
}

std::string candidates_csv(const CandidateSet &c) {
  std::string out;
  for (int j = 0; j < c.q; ++j) {
    if (j) out += ',';
    out += 'x';
    out += std::to_string(j + 1);
  }
  out += '\n';
  for (int i = 0; i < c.n; ++i) {
    const double *p = c.point(i);
    for (int j = 0; j < c.q; ++j) {
      if (j) out += ',';
      out += format_double(p[j]);
    }
    out += '\n';
  }
  return out;
}

void write_candidates_csv(const std::string &path, const CandidateSet &c) {
  write_text_file(path, candidates_csv(c));
}

CandidateSet parse_candidates_csv(const std::string &text, const FeatureMap &map) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("candidates CSV is empty");

  const std::vector<std::string> header = split_fields(line);
  const int q = static_cast<int>(header.size());
  for (int j = 0; j < q; ++j)
    if (header[j] != "x" + std::to_string(j + 1))
      throw ConfigError("candidates CSV header must be x1,...,xq; got '" + line +
                        "'");

  std::vector<double> pts;
  int n = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_fields(line);
    if (static_cast<int>(fields.size()) != q)
      throw ConfigError("candidates CSV line " + std::to_string(line_no) +
                        ": expected " + std::to_string(q) + " fields, got " +
                        std::to_string(fields.size()));
    for (int j = 0; j < q; ++j) pts.push_back(parse_number(fields[j], line_no));
    ++n;
  }
  if (n == 0) throw ConfigError("candidates CSV has no data rows");
  return make_candidates(map, pts, n, q);
}

CandidateSet read_candidates_csv(const std::string &path, const FeatureMap &map) {
  return parse_candidates_csv(read_text_file(path), map);
}

std::string trace_csv(const ConvergenceTrace &t) {
  std::string out = "iteration,objective,drift,gap,support_size,elapsed_s\n";
  for (const TraceRow &row : t.rows) {
    out += std::to_string(row.iteration);
    out += ',';
    out += format_double(row.objective);
    out += ',';
    out += format_double(row.drift);
    out += ',';
    out += format_double(row.gap);
    out += ',';
    out += std::to_string(row.support_size);
    out += ',';
    out += format_double(row.elapsed_seconds);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::string &path, const ConvergenceTrace &t) {
  write_text_file(path, trace_csv(t));
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace optdes
