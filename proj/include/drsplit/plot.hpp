#pragma once

#include <string>
#include <vector>

#include "drsplit/dr.hpp"
#include "drsplit/product.hpp"
#include "drsplit/sets.hpp"

namespace drsplit {

// Static SVG of a planar run: set outlines, shadow-iterate markers, and the
// gap vector drawn from the shadow limit. Deterministic bytes for identical
// inputs. Throws UnsupportedError unless the problem dimension is 2.
std::string render_plot_svg(const DrProblem& p, const DrTrace& trace,
                            const Vector& gap);

// Spingarn variant: the M sets, their translated copies C_j - g_j (dashed),
// consensus iterates, and per-set gap arrows from the consensus point.
std::string render_plot_svg(const ProductProblem& p, const DrTrace& trace,
                            const std::vector<Vector>& per_set_gaps);

void write_plot_svg(const std::string& svg, const std::string& path);

}  // namespace drsplit
