#pragma once

// JSON and CSV formats: potential specs, polygons, reports, eigenpairs.

#include <Eigen/Core>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "specgap/constants.hpp"
#include "specgap/convexdomain.hpp"
#include "specgap/eigensolve1d.hpp"
#include "specgap/eigensolve2d.hpp"
#include "specgap/potential.hpp"
#include "specgap/rearrange.hpp"
#include "specgap/sublevel.hpp"

namespace specgap {

using json = nlohmann::ordered_json;

/// Malformed or missing input; maps to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON file; syntax errors report line and column.
json read_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& origin);

/// Potential spec with grid resolution: {kind, params, interval, n, cap}.
struct PotentialInput {
  PotentialSpec spec;
  Eigen::Index n = 1000;
  double cap = kDefaultCap;
};

PotentialInput potential_input_from_json(const json& j);
json to_json(const PotentialInput& input);

/// {"vertices": [[x, y], ...]} or a bare vertex array.
ConvexPolygon polygon_from_json(const json& j);
json to_json(const ConvexPolygon& poly);

json to_json(const SublevelReport<double>& report);
json to_json(const RearrangementReport<double>& report);
json to_json(const ConstantTriple& t);
json to_json(const DomainAnalysis& a);
/// Header of an exported 1D eigenpair: lambda1, n, dx, residual.
json eigenpair_header(const Eigenpair1Dd& pair);
json eigenpair_header(const Eigenpair2D& pair, const MaskedGrid& grid);

/// Shortest round-trip representation, 17 significant digits.
std::string format_double(double v);

/// Comma separated, '.' decimal, header on the first line.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

void write_eigenpair_csv(const std::filesystem::path& path, const PotentialGridd& grid, const Eigenpair1Dd& pair);
void write_height_csv(const std::filesystem::path& path, const HeightFunction& hf);
void write_eigenpair2d_csv(const std::filesystem::path& path, const MaskedGrid& grid, const Eigenpair2D& pair);

void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace specgap
