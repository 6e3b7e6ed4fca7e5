#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "nimfrac/fractal.hpp"
#include "nimfrac/geometry.hpp"
#include "nimfrac/verify.hpp"

namespace nimfrac {

// All writers emit ASCII decimal with LF line endings, independent of the
// stream's locale.
enum class ExportFormat { csv, jsonl, obj, svg };

/// Throws Error(bad_request) for unknown names.
ExportFormat parse_export_format(std::string_view name);
std::string_view to_string(ExportFormat format) noexcept;

/// Throws Error(bad_request) unless points of this dimension can be written
/// in `format` (obj needs d = 3, svg needs d = 2).
void require_point_format(ExportFormat format, unsigned dimension);

/// Writes points one at a time in any of the export formats.
///
///   csv    "x0,...,x{d-1}" header, then one comma-separated row per point
///   jsonl  one JSON array per line
///   obj    "v x y z" per point (d = 3 only, vertices only)
///   svg    a unit square per point with the origin at the bottom left and
///          viewBox 0 0 2^n 2^n (d = 2 only)
class PointWriter {
 public:
  /// Throws Error(bad_request) if the format does not fit the dimension.
  PointWriter(std::ostream& out, ExportFormat format, unsigned dimension,
              unsigned exponent);
  ~PointWriter();

  PointWriter(const PointWriter&) = delete;
  PointWriter& operator=(const PointWriter&) = delete;

  void write(std::span<const Coord> point);
  /// Emits any trailer and flushes. Called by the destructor if needed.
  void finish();

 private:
  void flush_buffer();

  std::ostream& out_;
  ExportFormat format_;
  unsigned dimension_;
  Coord side_;
  std::string buffer_;
  bool finished_ = false;
};

void write_pointset(const PointSet& ps, ExportFormat format, std::ostream& out);

/// csv: one row per cell, "c_1,...,c_k,count", under a header naming the
/// kept axes. svg: one square per cell of a 2-D grid, white for 0 hits,
/// black for exactly 1, grey for more.
void write_shadow(const ShadowGrid& grid, ExportFormat format, std::ostream& out);

/// Parses a csv export. The exponent defaults to the smallest one that
/// bounds every coordinate.
PointSet read_pointset_csv(std::istream& in,
                           std::optional<unsigned> exponent = std::nullopt);

void write_report_text(std::span<const VerificationReport> reports,
                       std::ostream& out);
void write_report_jsonl(std::span<const VerificationReport> reports,
                        std::ostream& out);

}  // namespace nimfrac
