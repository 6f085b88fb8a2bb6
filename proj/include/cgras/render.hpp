// Text, LaTeX and JSON presentation of graphs, error-event tables, bounds and regions.
#pragma once

#include "cgras/numeric.hpp"
#include "cgras/scheme.hpp"

#include <string>
#include <vector>

namespace cgras {

std::string render_assumptions(const AssumptionReport& r, RenderStyle style);
std::string render_adg(const OrientedCgras& g, RenderStyle style);
// Admissible encoding sets and, per decoder, admissible decoding sets with their roots.
std::string render_tables(const OrientedCgras& g, RenderStyle style);
std::string render_bounds(const std::vector<Inequality>& rows, RenderStyle style);
std::string render_region(const Region& r, RenderStyle style);
std::string render_numeric(const NumericRegion& nr, const std::vector<RatePoint>* vertices, RenderStyle style);

}  // namespace cgras
