#include "specgap/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace specgap {

namespace {

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << column << ": malformed JSON (" << e.what() << ")";
    throw InputError(msg.str());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

PotentialInput potential_input_from_json(const json& j) {
  try {
    PotentialInput input;
    input.spec.kind = potential_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("params")) input.spec.params = j.at("params").get<std::vector<double>>();
    if (j.contains("interval")) {
      const auto iv = j.at("interval").get<std::vector<double>>();
      if (iv.size() != 2) throw InputError("interval must have two entries");
      input.spec.interval = {iv[0], iv[1]};
    } else if (input.spec.kind == PotentialKind::coneModel && !input.spec.params.empty()) {
      input.spec.interval = {0.0, input.spec.params[0]};
    }
    if (j.contains("n")) input.n = j.at("n").get<Eigen::Index>();
    if (j.contains("cap")) input.cap = j.at("cap").get<double>();
    return input;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid potential spec: ") + e.what());
  } catch (const ParameterError& e) {
    throw InputError(std::string("invalid potential spec: ") + e.what());
  }
}

json to_json(const PotentialInput& input) {
  return {{"kind", to_string(input.spec.kind)},
          {"params", input.spec.params},
          {"interval", {input.spec.interval.first, input.spec.interval.second}},
          {"n", input.n},
          {"cap", input.cap}};
}

ConvexPolygon polygon_from_json(const json& j) {
  try {
    const json& list = j.is_object() ? j.at("vertices") : j;
    std::vector<Point> vertices;
    for (const auto& v : list) {
      const auto xy = v.get<std::vector<double>>();
      if (xy.size() != 2) throw InputError("polygon vertices must be [x, y] pairs");
      vertices.emplace_back(xy[0], xy[1]);
    }
    return ConvexPolygon(std::move(vertices));
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid polygon: ") + e.what());
  } catch (const GeometryError& e) {
    throw InputError(std::string("invalid polygon: ") + e.what());
  }
}

json to_json(const ConvexPolygon& poly) {
  json vertices = json::array();
  for (const auto& p : poly.vertices()) vertices.push_back({p.x(), p.y()});
  return {{"vertices", vertices}};
}

json to_json(const SublevelReport<double>& r) {
  return {{"yStar", r.yStar},
          {"widthAtYStar", r.widthAtYStar},
          {"fStar", r.fStar},
          {"isInterval", r.isInterval},
          {"lowerBound", r.lowerBound},
          {"upperBoundSharp", r.upperBoundSharp ? json(*r.upperBoundSharp) : json(nullptr)}};
}

json to_json(const RearrangementReport<double>& r) {
  return {{"hlLeft", r.hlLeft},
          {"hlRight", r.hlRight},
          {"psLeft", r.psLeft},
          {"psRight", r.psRight},
          {"lambdaOriginal", r.lambdaOriginal},
          {"lambdaRearranged", r.lambdaRearranged}};
}

json to_json(const ConstantTriple& t) { return {{"alpha", t.alpha}, {"beta", t.beta}, {"gamma", t.gamma}}; }

json to_json(const DomainAnalysis& a) {
  return {{"D", a.diameter},
          {"rho", a.rho},
          {"width", a.width},
          {"lambda1", a.lambda1},
          {"supRatio", a.supRatio},
          {"statistic", a.statistic},
          {"L", a.L},
          {"gjError", number_or_null(a.gjError)},
          {"lambdaNormalized", a.lambdaNormalized},
          {"lambdaGJ", a.lambdaGJ},
          {"balance", a.balance},
          {"activeCells", a.activeCells},
          {"residual", a.residual}};
}

json eigenpair_header(const Eigenpair1Dd& pair) {
  return {{"lambda1", pair.lambda1}, {"n", pair.f.size()}, {"dx", pair.dx}, {"residual", pair.residual}};
}

json eigenpair_header(const Eigenpair2D& pair, const MaskedGrid& grid) {
  return {{"lambda1", pair.lambda1},
          {"activeCount", grid.activeCount},
          {"spacing", pair.spacing},
          {"origin", {grid.origin.x(), grid.origin.y()}},
          {"residual", pair.residual},
          {"outerIterations", pair.outerIterations},
          {"cgIterations", pair.cgIterations},
          {"shift", pair.shift}};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : CsvWriter(path, std::vector<std::string>(header)) {}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw InputError("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  out_ << (filled_ ? "," : "") << v;
  ++filled_;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CSV row width does not match the header");
  out_ << '\n';
  filled_ = 0;
}

void write_eigenpair_csv(const std::filesystem::path& path, const PotentialGridd& grid, const Eigenpair1Dd& pair) {
  CsvWriter csv(path, {"x", "f"});
  for (Eigen::Index i = 0; i < pair.f.size(); ++i) {
    csv.cell(grid.node(i + 1)).cell(pair.f[i]);
    csv.end_row();
  }
}

void write_height_csv(const std::filesystem::path& path, const HeightFunction& hf) {
  CsvWriter csv(path, {"x", "f1", "f2", "h"});
  for (Eigen::Index i = 0; i < hf.samples(); ++i) {
    csv.cell(hf.node(i)).cell(hf.f1[i]).cell(hf.f2[i]).cell(hf.h[i]);
    csv.end_row();
  }
}

void write_eigenpair2d_csv(const std::filesystem::path& path, const MaskedGrid& grid, const Eigenpair2D& pair) {
  CsvWriter csv(path, {"i", "j", "x", "y", "u"});
  for (Eigen::Index k = 0; k < grid.activeCount; ++k) {
    const Point c = grid.center(k);
    csv.cell(static_cast<long long>(grid.cells[k][0])).cell(static_cast<long long>(grid.cells[k][1]));
    csv.cell(c.x()).cell(c.y()).cell(pair.u[k]);
    csv.end_row();
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace specgap
