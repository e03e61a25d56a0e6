/** @file io.hpp
 *  @brief Trace files, JSON reports and SVG plots.
 *
 *  Dense traces are CSV with header `index,phase,coord_0,...`; index and phase
 *  are 1-based. Sparse traces are JSON lines `{"index":n,"entries":{"i":v}}`.
 *  Exact values are written as plain decimals.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "serwalk/analysis.hpp"
#include "serwalk/rearrange.hpp"
#include "serwalk/seqspace.hpp"

namespace serwalk {

void write_csv(const Walk& w, std::ostream& os);
/// Phases come from the phase column. The walk is exact when every value is a
/// decimal that some dyadic prints as.
Walk read_csv(std::istream& is);

void write_jsonl(const Walk& w, std::ostream& os);
/// Phases are closed after every return to the zero vector.
Walk read_jsonl(std::istream& is);

/// Chooses the format by extension (.csv or .jsonl/.json). Throws InvalidArgument
/// on a missing or malformed file.
Walk read_trace(const std::string& path);
void write_trace(const Walk& w, const std::string& path);

/// Target samples: JSON {"points":[[x,...],...]} or a CSV whose coord_* columns hold the points.
PointSample read_sample(const std::string& path);

std::string family_json(const VectorFamily& fam);
VectorFamily family_from_json(const std::string& text);

/// {"norm":"sup"|"euclidean","terms":[{"i":v,...},...]}
std::string instance_json(const std::vector<SparseVec>& terms, NormKind kind);
std::vector<SparseVec> instance_from_json(const std::string& text, NormKind* kind);

std::string rearrange_report_json(const RearrangeResult& r, const std::string& extra_key = {},
                                  const std::string& extra_value = {});

struct EstimateVerdicts {
  std::vector<std::pair<std::string, std::string>> entries;
};
std::string estimate_report_json(const LimitEstimate& est, const EstimateVerdicts& verdicts = {});

std::string element_json(const Element& e);

struct PlotOptions {
  double width = 640;
  double height = 480;
  bool mark_points = true;
};

/// Polyline from the origin through every sum, one colour per phase, with axis
/// ticks at 1/2, 1, 3/2 and 2. Throws InvalidArgument for empty or non-2-D walks.
std::string render_svg(const Walk& w, const PlotOptions& opts = {});

}  // namespace serwalk
