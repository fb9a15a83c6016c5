#ifndef OPTDES_CSV_HPP_
#define OPTDES_CSV_HPP_

#include <string>
#include <vector>

#include "optdes/solver.hpp"

namespace optdes {

// Shortest-round-trip decimal rendering of a double (17 significant
// digits, '.' decimal point, no separators).
std::string format_double(double v);

// A design as written to and read from CSV: header x1,...,xq,weight and one
// row per support point, sorted lexicographically by coordinates.
struct DesignTable {
  int q = 0;
  std::vector<double> points;   // k x q, row major
  std::vector<double> weights;  // k

  int rows() const { return static_cast<int>(weights.size()); }
  const double *point(int i) const {
    return &points[static_cast<std::size_t>(i) * q];
  }
};

// Extracts the support of a Design, lexicographically sorted.
DesignTable design_table(const Design &d);

std::string design_csv(const DesignTable &t);
void write_design_csv(const std::string &path, const DesignTable &t);

// Parses a design CSV; throws ConfigError with the offending line on any
// malformed content.
DesignTable parse_design_csv(const std::string &text);
DesignTable read_design_csv(const std::string &path);

// Convergence trace CSV: iteration,objective,drift,gap,support_size,elapsed_s.
std::string trace_csv(const ConvergenceTrace &t);
void write_trace_csv(const std::string &path, const ConvergenceTrace &t);

// Candidate-set export/import: header x1,...,xq, one point per row.
// Regressors are recomputed from the feature map on import.
std::string candidates_csv(const CandidateSet &c);
void write_candidates_csv(const std::string &path, const CandidateSet &c);
CandidateSet parse_candidates_csv(const std::string &text, const FeatureMap &map);
CandidateSet read_candidates_csv(const std::string &path, const FeatureMap &map);

// Overwrites `path` with `content`; throws ConfigError when the file cannot
// be opened.
void write_text_file(const std::string &path, const std::string &content);
std::string read_text_file(const std::string &path);

}  // namespace optdes

#endif  // OPTDES_CSV_HPP_
