#pragma once

#include <string>
#include <vector>

#include "fcraney/density.hpp"

namespace fcraney {

/**
 * One plotted curve: an x-grid inside the curve's support and the density
 * along it. Points inside the support-edge band are extrapolated from the
 * square-root edge model and flagged. Quasi curves (r = p + 1) are not
 * probability densities and are marked so renderers can dash them.
 */
struct FigureCurve {
    std::string label;
    Family family = Family::fuss_catalan;
    int s = 0;  // order for Fuss-Catalan curves
    int p = 0;  // Raney parameters otherwise
    int r = 0;
    bool quasi = false;
    std::vector<double> x;
    std::vector<double> density;
    std::vector<bool> extrapolated;
};

struct FigureData {
    std::string figure_id;
    std::vector<FigureCurve> curves;
};

/**
 * Standard plot datasets:
 *   fig1: orders 1 and 2 on their full supports;
 *   fig2: orders 3..6 restricted to x >= 5;
 *   fig3: W_{3,r} for r = 1..3 plus the quasi curve W_{3,4};
 *   fig4: W_{4,r} for r = 1..4 plus the quasi curve W_{4,5};
 *   fig5: W_{2,r} for r = 1..2 plus the quasi curve W_{2,3};
 *   fig6: the diagonal family W_{r,r} for r = 2..6.
 * points is the per-curve grid resolution (at least 400).
 */
FigureData figure_reproduce(const std::string& figure_id, int points = 480);

}  // namespace fcraney
