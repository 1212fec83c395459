#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"
#include "mphase/detector.hpp"
#include "mphase/dimest.hpp"
#include "mphase/spectra.hpp"

namespace mphase {

/// `n,ratio,degenerate`, 1-based n.
void write_ratio_csv(std::ostream& out, const RatioSeries& series);
/// `n,sigma_sum`.
void write_sum_csv(std::ostream& out, const SumSeries& sums);
/// `rank,frame,magnitude`.
void write_top_csv(std::ostream& out, const TransitionReport& report);
/// `d,residual,scaled_residual`.
void write_residual_csv(std::ostream& out, const ResidualCurve& curve);

/// Fields in fixed order: alpha, top, selected, short_selection.
nlohmann::ordered_json to_json(const TransitionReport& report);
TransitionReport transition_report_from_json(const nlohmann::ordered_json& doc);

/// Static polyline plot.
void write_line_plot_svg(std::ostream& out, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const std::string& title, const std::string& x_label,
                         const std::string& y_label);

std::string format_number(double value);

}  // namespace mphase
