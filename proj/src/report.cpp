#include "mphase/report.hpp"

#include <cstdio>
#include <ostream>

namespace mphase {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_ratio_csv(std::ostream& out, const RatioSeries& series) {
  out << "n,ratio,degenerate\n";
  for (Index n = 0; n < series.size(); ++n)
    out << n + 1 << ',' << format_number(series.ratios(n)) << ','
        << (series.degenerate[static_cast<std::size_t>(n)] ? 1 : 0) << '\n';
}

void write_sum_csv(std::ostream& out, const SumSeries& sums) {
  out << "n,sigma_sum\n";
  for (Index j = 0; j < sums.values.size(); ++j)
    out << sums.first + j << ',' << format_number(sums.values(j)) << '\n';
}

void write_top_csv(std::ostream& out, const TransitionReport& report) {
  out << "rank,frame,magnitude\n";
  for (std::size_t i = 0; i < report.top.size(); ++i)
    out << i + 1 << ',' << report.top[i].frame << ',' << format_number(report.top[i].magnitude)
        << '\n';
}

void write_residual_csv(std::ostream& out, const ResidualCurve& curve) {
  out << "d,residual,scaled_residual\n";
  for (Index d = 0; d < curve.residual.size(); ++d)
    out << d + 1 << ',' << format_number(curve.residual(d)) << ','
        << format_number(curve.scaled(d)) << '\n';
}

namespace {

std::string format_double_short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

nlohmann::ordered_json candidates_to_json(const std::vector<Candidate>& list) {
  auto out = nlohmann::ordered_json::array();
  for (const Candidate& c : list) {
    nlohmann::ordered_json item;
    item["frame"] = c.frame;
    item["magnitude"] = c.magnitude;
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<Candidate> candidates_from_json(const nlohmann::ordered_json& list) {
  std::vector<Candidate> out;
  for (const auto& item : list)
    out.push_back({item.at("frame").get<Index>(), item.at("magnitude").get<double>()});
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const TransitionReport& report) {
  nlohmann::ordered_json doc;
  doc["alpha"] = report.alpha;
  doc["top"] = candidates_to_json(report.top);
  doc["selected"] = candidates_to_json(report.selected);
  doc["short_selection"] = report.short_selection;
  return doc;
}

TransitionReport transition_report_from_json(const nlohmann::ordered_json& doc) {
  TransitionReport report;
  report.alpha = doc.at("alpha").get<Index>();
  report.top = candidates_from_json(doc.at("top"));
  report.selected = candidates_from_json(doc.at("selected"));
  report.short_selection = doc.value("short_selection", false);
  return report;
}

void write_line_plot_svg(std::ostream& out, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const std::string& title, const std::string& x_label,
                         const std::string& y_label) {
  constexpr double width = 720, height = 360, left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = x.size() ? x.minCoeff() : 0.0, x_hi = x.size() ? x.maxCoeff() : 1.0;
  double y_lo = y.size() ? std::min(0.0, y.minCoeff()) : 0.0;
  double y_hi = y.size() ? y.maxCoeff() : 1.0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  auto px = [&](double v) { return left + plot_w * (v - x_lo) / (x_hi - x_lo); };
  auto py = [&](double v) { return top + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo)); };

  char buf[128];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" << xml_escape(title) << "</text>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" ",
                left, top, plot_w, plot_h);
  out << buf << "fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
    const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" ", left - 6,
                  py(yv) + 4);
    out << buf << "font-family=\"sans-serif\" font-size=\"11\">" << format_double_short(yv)
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" ", px(xv),
                  top + plot_h + 16);
    out << buf << "font-family=\"sans-serif\" font-size=\"11\">" << format_double_short(xv)
        << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(x_label)
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" << xml_escape(y_label) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
  for (Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(x(i)), py(y(i)));
    out << buf;
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace mphase
