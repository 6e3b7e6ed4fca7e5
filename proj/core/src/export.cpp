#include "nimfrac/export.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "nimfrac/errors.hpp"

namespace nimfrac {

namespace {

void append_number(std::string& out, std::uint64_t value) {
  std::array<char, 24> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), end);
}

void append_joined(std::string& out, std::span<const Coord> values,
                   char separator) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += separator;
    append_number(out, values[i]);
  }
}

void append_json_array(std::string& out, std::span<const Coord> values) {
  out += '[';
  append_joined(out, values, ',');
  out += ']';
}

void append_svg_open(std::string& out, Coord side) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 ";
  append_number(out, side);
  out += ' ';
  append_number(out, side);
  out += "\" shape-rendering=\"crispEdges\">\n";
}

void append_svg_rect(std::string& out, Coord x, Coord y, Coord side,
                     std::string_view fill) {
  out += "<rect x=\"";
  append_number(out, x);
  out += "\" y=\"";
  append_number(out, side - 1 - y);
  out += "\" width=\"1\" height=\"1\"";
  if (!fill.empty()) {
    out += " fill=\"";
    out += fill;
    out += '"';
  }
  out += "/>\n";
}

Coord parse_coord(std::string_view field, std::size_t line) {
  Coord value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::bad_request,
                "line " + std::to_string(line) + ": '" + std::string(field) +
                    "' is not a 64-bit nonnegative integer");
  }
  return value;
}

}  // namespace

ExportFormat parse_export_format(std::string_view name) {
  if (name == "csv") return ExportFormat::csv;
  if (name == "jsonl") return ExportFormat::jsonl;
  if (name == "obj") return ExportFormat::obj;
  if (name == "svg") return ExportFormat::svg;
  throw Error(ErrorCode::bad_request,
              "unknown format '" + std::string(name) +
                  "' (expected csv, jsonl, obj or svg)");
}

std::string_view to_string(ExportFormat format) noexcept {
  switch (format) {
    case ExportFormat::csv: return "csv";
    case ExportFormat::jsonl: return "jsonl";
    case ExportFormat::obj: return "obj";
    case ExportFormat::svg: return "svg";
  }
  return "csv";
}

void require_point_format(ExportFormat format, unsigned dimension) {
  if (dimension == 0) {
    throw Error(ErrorCode::bad_request, "dimension must be at least 1");
  }
  if (format == ExportFormat::obj && dimension != 3) {
    throw Error(ErrorCode::bad_request,
                "obj export needs 3-dimensional points, got " +
                    std::to_string(dimension));
  }
  if (format == ExportFormat::svg && dimension != 2) {
    throw Error(ErrorCode::bad_request,
                "svg export needs 2-dimensional points, got " +
                    std::to_string(dimension));
  }
}

PointWriter::PointWriter(std::ostream& out, ExportFormat format,
                         unsigned dimension, unsigned exponent)
    : out_(out), format_(format), dimension_(dimension), side_(0) {
  require_point_format(format, dimension);
  if (exponent > kMaxExponent) {
    throw Error(ErrorCode::bad_request, "bounding exponent too large");
  }
  side_ = Coord{1} << exponent;
  if (format == ExportFormat::csv) {
    for (unsigned j = 0; j < dimension; ++j) {
      if (j != 0) buffer_ += ',';
      buffer_ += 'x';
      append_number(buffer_, j);
    }
    buffer_ += '\n';
  } else if (format == ExportFormat::svg) {
    append_svg_open(buffer_, side_);
  }
}

PointWriter::~PointWriter() {
  if (!finished_) {
    try {
      finish();
    } catch (...) {
    }
  }
}

void PointWriter::write(std::span<const Coord> point) {
  if (point.size() != dimension_) {
    throw Error(ErrorCode::bad_request, "point has the wrong dimension");
  }
  switch (format_) {
    case ExportFormat::csv:
      append_joined(buffer_, point, ',');
      break;
    case ExportFormat::jsonl:
      append_json_array(buffer_, point);
      break;
    case ExportFormat::obj:
      buffer_ += "v ";
      append_joined(buffer_, point, ' ');
      break;
    case ExportFormat::svg:
      append_svg_rect(buffer_, point[0], point[1], side_, {});
      break;
  }
  if (format_ != ExportFormat::svg) buffer_ += '\n';
  if (buffer_.size() >= (1u << 16)) flush_buffer();
}

void PointWriter::finish() {
  if (finished_) return;
  finished_ = true;
  if (format_ == ExportFormat::svg) buffer_ += "</svg>\n";
  flush_buffer();
  out_.flush();
}

void PointWriter::flush_buffer() {
  out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
}

void write_pointset(const PointSet& ps, ExportFormat format, std::ostream& out) {
  PointWriter writer(out, format, ps.dimension(), ps.exponent());
  for (std::size_t i = 0; i < ps.size(); ++i) writer.write(ps[i]);
  writer.finish();
}

void write_shadow(const ShadowGrid& grid, ExportFormat format,
                  std::ostream& out) {
  std::string buf;
  if (format == ExportFormat::csv) {
    bool first = true;
    for (unsigned j = 0; j < grid.source_dimension(); ++j) {
      if (j == grid.dropped_axis()) continue;
      if (!first) buf += ',';
      first = false;
      buf += 'x';
      append_number(buf, j);
    }
    buf += ",count\n";
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
      append_joined(buf, grid.cell(i), ',');
      buf += ',';
      append_number(buf, grid.count(i));
      buf += '\n';
      if (buf.size() >= (1u << 16)) {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
      }
    }
  } else if (format == ExportFormat::svg) {
    if (grid.reduced_dimension() != 2) {
      throw Error(ErrorCode::bad_request,
                  "svg shadow export needs a 2-dimensional grid, got " +
                      std::to_string(grid.reduced_dimension()));
    }
    const Coord side = Coord{1} << grid.exponent();
    append_svg_open(buf, side);
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
      const auto cell = grid.cell(i);
      const auto hits = grid.count(i);
      const std::string_view fill =
          hits == 0 ? "#ffffff" : hits == 1 ? "#000000" : "#808080";
      append_svg_rect(buf, cell[0], cell[1], side, fill);
    }
    buf += "</svg>\n";
  } else {
    throw Error(ErrorCode::bad_request,
                "shadow export supports csv and svg, not " +
                    std::string(to_string(format)));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.flush();
}

PointSet read_pointset_csv(std::istream& in, std::optional<unsigned> exponent) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::bad_request, "csv input is empty");
  }
  const auto columns =
      static_cast<unsigned>(std::ranges::count(line, ',') + 1);
  std::string expected_header;
  for (unsigned k = 0; k < columns; ++k) {
    if (k != 0) expected_header += ',';
    expected_header += 'x' + std::to_string(k);
  }
  if (line != expected_header) {
    throw Error(ErrorCode::bad_request, "unexpected csv header '" + line + "'");
  }

  std::vector<Coord> flat;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    unsigned fields = 0;
    for (;;) {
      const auto comma = rest.find(',');
      flat.push_back(parse_coord(rest.substr(0, comma), line_no));
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields != columns) {
      throw Error(ErrorCode::bad_request,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(fields) + " fields, expected " +
                      std::to_string(columns));
    }
  }

  unsigned n = 0;
  if (exponent) {
    n = *exponent;
  } else if (!flat.empty()) {
    n = static_cast<unsigned>(
        std::bit_width(*std::max_element(flat.begin(), flat.end())));
  }
  return PointSet::from_flat(columns, n, std::move(flat));
}

void write_report_text(std::span<const VerificationReport> reports,
                       std::ostream& out) {
  std::string buf = " d  n     recursive      filtered      expected  result     time_ms\n";
  std::array<char, 160> line;
  for (const auto& r : reports) {
    std::snprintf(line.data(), line.size(),
                  "%2u %2u %13llu %13llu %13llu  %-9s %9.3f\n", r.dimension,
                  r.exponent,
                  static_cast<unsigned long long>(r.cardinality_recursive),
                  static_cast<unsigned long long>(r.cardinality_filtered),
                  static_cast<unsigned long long>(r.expected_cardinality),
                  r.equal ? "equal" : "DIFFERENT",
                  static_cast<double>(r.elapsed.count()) / 1e6);
    buf += line.data();
    if (r.first_discrepancy) {
      const auto& gap = *r.first_discrepancy;
      buf += "      first difference at index " + std::to_string(gap.index) +
             ": recursive " +
             (gap.recursive ? to_string(*gap.recursive) : std::string("<end>")) +
             ", filtered " +
             (gap.filtered ? to_string(*gap.filtered) : std::string("<end>")) +
             "\n";
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_report_jsonl(std::span<const VerificationReport> reports,
                        std::ostream& out) {
  std::string buf;
  for (const auto& r : reports) {
    buf += "{\"d\":";
    append_number(buf, r.dimension);
    buf += ",\"n\":";
    append_number(buf, r.exponent);
    buf += ",\"equal\":";
    buf += r.equal ? "true" : "false";
    buf += ",\"cardinality_recursive\":";
    append_number(buf, r.cardinality_recursive);
    buf += ",\"cardinality_filtered\":";
    append_number(buf, r.cardinality_filtered);
    buf += ",\"expected_cardinality\":";
    append_number(buf, r.expected_cardinality);
    buf += ",\"elapsed_ns\":";
    append_number(buf, static_cast<std::uint64_t>(r.elapsed.count()));
    buf += ",\"first_discrepancy\":";
    if (r.first_discrepancy) {
      const auto& gap = *r.first_discrepancy;
      buf += "{\"index\":";
      append_number(buf, gap.index);
      buf += ",\"recursive\":";
      if (gap.recursive) {
        append_json_array(buf, gap.recursive->coords());
      } else {
        buf += "null";
      }
      buf += ",\"filtered\":";
      if (gap.filtered) {
        append_json_array(buf, gap.filtered->coords());
      } else {
        buf += "null";
      }
      buf += '}';
    } else {
      buf += "null";
    }
    buf += "}\n";
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace nimfrac
