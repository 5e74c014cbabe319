#include "fcraney/figures.hpp"

#include <string>
#include <vector>

#include "fcraney/errors.hpp"
#include "fcraney/fc_density.hpp"
#include "fcraney/raney_density.hpp"

namespace fcraney {

namespace {

/// Fills the grid and values of one curve on (x_min, upper), open at both
/// ends; x_min = 0 places the first point one step inside.
void tabulate(FigureCurve* curve, const DensitySpec& spec, double x_min, int points) {
    const EdgeModel model = fit_edge_model(spec);
    curve->x.resize(static_cast<std::size_t>(points));
    curve->density.resize(static_cast<std::size_t>(points));
    curve->extrapolated.resize(static_cast<std::size_t>(points));
    const double span = spec.support_upper - x_min;
    for (int i = 0; i < points; ++i) {
        const double x = x_min + span * (i + 1) / (points + 1);
        const DensitySample sample = density_value_extended(spec, model, x);
        curve->x[static_cast<std::size_t>(i)] = x;
        curve->density[static_cast<std::size_t>(i)] = sample.value;
        curve->extrapolated[static_cast<std::size_t>(i)] = sample.extrapolated;
    }
}

FigureCurve fc_curve(int s, double x_min, int points) {
    FigureCurve curve;
    curve.label = "fc s=" + std::to_string(s);
    curve.family = Family::fuss_catalan;
    curve.s = s;
    tabulate(&curve, build_fc_spec(s), x_min, points);
    return curve;
}

FigureCurve raney_curve(int p, int r, int points) {
    FigureCurve curve;
    curve.label = "raney p=" + std::to_string(p) + " r=" + std::to_string(r);
    curve.family = Family::raney;
    curve.p = p;
    curve.r = r;
    curve.quasi = (r == p + 1);
    tabulate(&curve, build_raney_spec(p, r), 0.0, points);
    return curve;
}

}  // namespace

FigureData figure_reproduce(const std::string& figure_id, int points) {
    if (points < 400) throw DomainError("figure grids need at least 400 points");
    FigureData data;
    data.figure_id = figure_id;
    if (figure_id == "fig1") {
        data.curves.push_back(fc_curve(1, 0.0, points));
        data.curves.push_back(fc_curve(2, 0.0, points));
    } else if (figure_id == "fig2") {
        for (int s = 3; s <= 6; ++s) data.curves.push_back(fc_curve(s, 5.0, points));
    } else if (figure_id == "fig3") {
        for (int r = 1; r <= 4; ++r) data.curves.push_back(raney_curve(3, r, points));
    } else if (figure_id == "fig4") {
        for (int r = 1; r <= 5; ++r) data.curves.push_back(raney_curve(4, r, points));
    } else if (figure_id == "fig5") {
        for (int r = 1; r <= 3; ++r) data.curves.push_back(raney_curve(2, r, points));
    } else if (figure_id == "fig6") {
        for (int r = 2; r <= 6; ++r) data.curves.push_back(raney_curve(r, r, points));
    } else {
        throw DomainError("unknown figure id: " + figure_id +
                          " (expected fig1..fig6)");
    }
    return data;
}

}  // namespace fcraney
