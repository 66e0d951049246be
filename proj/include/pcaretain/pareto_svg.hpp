#ifndef PCARETAIN_PARETO_SVG_HPP
#define PCARETAIN_PARETO_SVG_HPP

#include <filesystem>
#include <string>

#include "pcaretain/retention.hpp"

namespace pcaretain {

// Standalone SVG 1.1 Pareto chart, 800x500: descending bars (id "bar-<k>"),
// cumulative line (id "cum-line") with markers (id "cum-marker-<k>"),
// horizontal cutoff line (id "cutoff-line") and vertical retained-count
// marker (id "cutoff-marker"). Output bytes are deterministic per input.
std::string render_pareto_svg(const ParetoData& data);

void emit_pareto_svg(const ParetoData& data, const std::filesystem::path& path);

}  // namespace pcaretain

#endif
