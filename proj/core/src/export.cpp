#include "ghostsim/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ghostsim/error.hpp"
#include "ghostsim/units.hpp"
#include "json.hpp"

namespace ghostsim {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json numbers(const std::vector<double>& values) {
  Json a = Json::array();
  for (double v : values) a.push_back(number(v));
  return a;
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
  written.push_back(path);
}

std::string profile_csv(const CorrelationProfile& p) {
  std::string s = "x2_m,delta_g2,std_err\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += format_double(p.x2[i]) + ',' + format_double(p.delta_g2[i]) + ',' +
         format_double(p.std_err[i]) + '\n';
  }
  return s;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string s = "z2_m,x2_m,delta_g2\n";
  for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
    const std::string z = format_double(sweep.z2[r]) + ',';
    const auto& row = sweep.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      s += z + format_double(row.x2[i]) + ',' + format_double(row.delta_g2[i]) + '\n';
    }
  }
  return s;
}

std::string histogram_csv(const HbtResult& hbt) {
  std::string s = "t_s,counts,g2\n";
  const auto& h = hbt.histogram;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    s += format_double(h.bin_centers[k]) + ',' + std::to_string(h.counts[k]) + ',' +
         format_double(hbt.g2.g2_curve[k]) + '\n';
  }
  return s;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string metrics_json(const RunOutput& run) {
  const MetricsReport& r = run.report;
  Json j;
  j["kind"] = std::string(to_string(run.config.kind));
  j["method"] = r.method;
  j["seed"] = run.config.seed;
  j["visibility"] = number(r.visibility);
  j["baseline"] = number(r.baseline);
  j["max_delta_g2"] = number(r.max_delta_g2);
  j["peak_positions_m"] = numbers(r.peak_positions);
  j["peak_separation_m"] = number(r.peak_separation);
  j["fwhm_per_peak_m"] = numbers(r.fwhm_per_peak);
  j["peak_to_midpoint"] = number(r.peak_to_midpoint);
  j["second_moment_m2"] = number(r.second_moment);
  j["blur_width_m"] = number(r.blur_width);
  Json features = Json::array();
  for (const auto& f : r.features) {
    features.push_back(Json{{"center_m", number(f.center)}, {"width_m", number(f.width)}});
  }
  j["features"] = features;
  if (!run.profiles.empty()) {
    const auto& p = run.profiles.front().profile;
    j["n_realizations"] = p.n_realizations;
    j["error_method"] = p.error_method;
  }

  if (run.sweep) {
    const auto& s = *run.sweep;
    Json sj;
    sj["z2_m"] = numbers(s.z2);
    sj["row_max_delta_g2"] = numbers(s.row_max);
    sj["row_second_moment_m2"] = numbers(s.row_second_moment);
    sj["best_z2_m"] = number(s.z2[s.best_row]);
    j["sweep"] = sj;
  }

  if (run.hbt) {
    const auto& h = *run.hbt;
    Json hj;
    hj["g2_zero"] = number(h.g2.g2_zero);
    hj["g2_zero_std_err"] = number(h.g2.g2_zero_std_err);
    hj["contrast"] = number(h.g2.contrast);
    hj["baseline_counts"] = number(h.g2.baseline);
    hj["baseline_noise"] = number(h.g2.baseline_noise);
    hj["baseline_bins"] = h.g2.baseline_bins;
    hj["half_width_s"] = number(h.g2.half_width);
    hj["tau0_estimate_s"] = h.tau0 ? number(*h.tau0) : Json(nullptr);
    hj["tau0_status"] = h.tau0_status;
    hj["total_starts"] = h.histogram.total_starts;
    hj["total_stops"] = h.histogram.total_stops;
    j["hbt"] = hj;
  }
  return j.dump(2) + '\n';
}

std::string render_profile_svg(const CorrelationProfile& profile, const std::string& title) {
  constexpr double W = 640.0, H = 400.0, L = 70.0, R = 20.0, T = 40.0, B = 50.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  s << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  std::string escaped;
  for (char c : title) {
    if (c == '<') escaped += "&lt;";
    else if (c == '>') escaped += "&gt;";
    else if (c == '&') escaped += "&amp;";
    else escaped += c;
  }
  s << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << escaped << "</text>\n";
  if (profile.size() >= 2) {
    const double x0 = profile.x2.front() * 1e3;
    const double x1 = profile.x2.back() * 1e3;
    double y0 = *std::min_element(profile.delta_g2.begin(), profile.delta_g2.end());
    double y1 = *std::max_element(profile.delta_g2.begin(), profile.delta_g2.end());
    y0 = std::min(y0, 0.0);
    if (!(y1 > y0)) y1 = y0 + 1.0;
    auto px = [&](double x) { return L + (x * 1e3 - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    s << "<rect x=\"" << fixed(L) << "\" y=\"" << fixed(T) << "\" width=\"" << fixed(W - L - R)
      << "\" height=\"" << fixed(H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i > 0) s << ' ';
      s << fixed(px(profile.x2[i])) << ',' << fixed(py(profile.delta_g2[i]));
    }
    s << "\"/>\n";
    const char* text = "font-family=\"sans-serif\" font-size=\"11\"";
    s << "<text x=\"" << fixed(L) << "\" y=\"" << fixed(H - B + 16) << "\" " << text << ">"
      << label(x0) << "</text>\n";
    s << "<text x=\"" << fixed(W - R) << "\" y=\"" << fixed(H - B + 16) << "\" text-anchor=\"end\" "
      << text << ">" << label(x1) << "</text>\n";
    s << "<text x=\"320\" y=\"" << fixed(H - 12) << "\" text-anchor=\"middle\" " << text
      << ">x2 (mm)</text>\n";
    s << "<text x=\"" << fixed(L - 6) << "\" y=\"" << fixed(T + 10) << "\" text-anchor=\"end\" "
      << text << ">" << label(y1) << "</text>\n";
    s << "<text x=\"" << fixed(L - 6) << "\" y=\"" << fixed(H - B) << "\" text-anchor=\"end\" "
      << text << ">" << label(y0) << "</text>\n";
    s << "<text x=\"16\" y=\"" << fixed(0.5 * H) << "\" transform=\"rotate(-90 16 " << fixed(0.5 * H)
      << ")\" text-anchor=\"middle\" " << text << ">delta g2</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> export_results(const RunOutput& run,
                                                  const std::filesystem::path& out_dir,
                                                  ExportOptions options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& p : run.profiles) {
    const bool primary = &p == &run.profiles.front();
    const std::string name = primary ? "profile.csv" : "profile_" + p.name + ".csv";
    write_file(out_dir / name, profile_csv(p.profile), written);
  }
  if (run.sweep) write_file(out_dir / "sweep.csv", sweep_csv(*run.sweep), written);
  if (run.hbt) write_file(out_dir / "histogram.csv", histogram_csv(*run.hbt), written);
  write_file(out_dir / "metrics.json", metrics_json(run), written);
  write_file(out_dir / "scenario.resolved", dump_scenario(run.config), written);
  if (options.svg && !run.profiles.empty()) {
    const auto& p = run.profiles.front();
    const std::string title = std::string(to_string(run.config.kind)) + " (" + p.name + ")";
    write_file(out_dir / "profile.svg", render_profile_svg(p.profile, title), written);
  }
  return written;
}

}  // namespace ghostsim
