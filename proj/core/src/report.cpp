#include "mq/report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace mq {

namespace {

using nlohmann::json;

json sweep_rows(const ModelParams& params, const SweepReport& report) {
  json rows = json::array();
  // The admissible action list per state does not depend on dt.
  std::vector<State> states;
  std::vector<std::vector<Action>> acts;
  for (int k = 1; k <= params.n_price_states(); ++k) {
    for (int y = -params.max_inventory; y <= params.max_inventory; ++y) {
      states.push_back(State{k, y});
      acts.push_back(available_actions(params, states.back()));
    }
  }
  for (const auto& row : report.rows) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      const Action& a = acts[s][row.solution.policy[s]];
      json obj;
      obj["dt"] = row.dt;
      obj["state_id"] = s;
      obj["v_star"] = row.solution.v[s];
      obj["policy_ask"] = a.ask ? json(*a.ask) : json(nullptr);
      obj["policy_bid"] = a.bid ? json(*a.bid) : json(nullptr);
      obj["sup_dist_to_ref"] = row.sup_dist_to_ref;
      obj["policy_identical"] = row.policy_identical;
      obj["hjb_residual"] = row.hjb;
      rows.push_back(std::move(obj));
    }
  }
  return rows;
}

json curve_rows(const LearningCurve& curve) {
  json rows = json::array();
  for (std::size_t i = 0; i < curve.step.size(); ++i) {
    json obj;
    obj["step"] = curve.step[i];
    obj["sup_error"] = curve.sup_error[i];
    obj["policy_match"] = static_cast<bool>(curve.policy_match[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

json complexity_rows(const std::vector<ComplexityRow>& in) {
  json rows = json::array();
  for (const auto& r : in) {
    json obj;
    obj["dt"] = r.dt;
    obj["seed"] = r.seed;
    obj["n_delta"] = r.n_delta;
    obj["reached"] = r.reached;
    rows.push_back(std::move(obj));
  }
  return rows;
}

json game_solution_rows(const std::vector<GameSolutionEntry>& entries) {
  json rows = json::array();
  for (const auto& e : entries) {
    for (std::size_t s = 0; s < e.actions.size(); ++s) {
      const auto& prof = e.solution.profiles[s];
      for (int player = 1; player <= 2; ++player) {
        const auto& mix = player == 1 ? prof.row : prof.col;
        const double v =
            player == 1 ? e.solution.v1[s] : e.solution.v2[s];
        for (std::size_t a = 0; a < mix.size(); ++a) {
          json obj;
          obj["dt"] = e.dt;
          obj["state_id"] = s;
          obj["player"] = player;
          obj["action_id"] = a;
          obj["probability"] = mix[a];
          obj["v_star"] = v;
          obj["residual"] = e.residuals[player - 1];
          rows.push_back(std::move(obj));
        }
      }
    }
  }
  return rows;
}

json game_curve_rows(const GameLearningCurve& curve) {
  json rows = json::array();
  for (std::size_t i = 0; i < curve.step.size(); ++i) {
    for (int player = 1; player <= 2; ++player) {
      json obj;
      obj["step"] = curve.step[i];
      obj["player"] = player;
      obj["value_error"] = curve.value_error[player - 1][i];
      obj["policy_error"] = curve.policy_error[player - 1][i];
      rows.push_back(std::move(obj));
    }
  }
  return rows;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_float()) return fmt_double(v.get<double>());
  return v.dump();
}

// Renders rows (which all share one key set) as CSV under the given header
// order, keeping the JSON mirror byte-compatible in values.
std::string rows_to_csv(const json& rows, const std::vector<std::string>& cols) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    os << (i ? "," : "") << cols[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << (i ? "," : "") << csv_cell(row.at(cols[i]));
    }
    os << '\n';
  }
  return os.str();
}

std::string dump_rows(const json& rows) { return rows.dump(2) + "\n"; }

}  // namespace

std::string sweep_csv(const ModelParams& params, const SweepReport& report) {
  return rows_to_csv(sweep_rows(params, report),
                     {"dt", "state_id", "v_star", "policy_ask", "policy_bid",
                      "sup_dist_to_ref", "policy_identical", "hjb_residual"});
}

std::string sweep_json(const ModelParams& params, const SweepReport& report) {
  return dump_rows(sweep_rows(params, report));
}

std::string curve_csv(const LearningCurve& curve) {
  return rows_to_csv(curve_rows(curve), {"step", "sup_error", "policy_match"});
}

std::string curve_json(const LearningCurve& curve) {
  return dump_rows(curve_rows(curve));
}

std::string complexity_csv(const std::vector<ComplexityRow>& rows) {
  return rows_to_csv(complexity_rows(rows), {"dt", "seed", "n_delta", "reached"});
}

std::string complexity_json(const std::vector<ComplexityRow>& rows) {
  return dump_rows(complexity_rows(rows));
}

std::string game_solution_csv(const std::vector<GameSolutionEntry>& entries) {
  return rows_to_csv(game_solution_rows(entries),
                     {"dt", "state_id", "player", "action_id", "probability",
                      "v_star", "residual"});
}

std::string game_solution_json(const std::vector<GameSolutionEntry>& entries) {
  return dump_rows(game_solution_rows(entries));
}

std::string game_curve_csv(const GameLearningCurve& curve) {
  return rows_to_csv(game_curve_rows(curve),
                     {"step", "player", "value_error", "policy_error"});
}

std::string game_curve_json(const GameLearningCurve& curve) {
  return dump_rows(game_curve_rows(curve));
}

std::string manifest_json(const RunManifest& m) {
  json out;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["command"] = m.command;
  out["config_path"] = m.config_path;
  out["config_checksum"] = m.config_checksum;
  out["config"] = m.config_snapshot.empty()
                      ? json(nullptr)
                      : json::parse(m.config_snapshot);
  out["master_seed"] = m.master_seed;
  out["started_at"] = m.started_at;
  out["finished_at"] = m.finished_at;
  out["cells"] = json::array();
  for (const auto& c : m.cells) {
    json obj;
    obj["name"] = c.name;
    obj["status"] = c.status;
    obj["message"] = c.message;
    obj["seed"] = c.seed;
    obj["seconds"] = c.seconds;
    out["cells"].push_back(std::move(obj));
  }
  out["artifacts"] = json::array();
  for (const auto& a : m.artifacts) {
    json obj;
    obj["path"] = a.path;
    obj["checksum_fnv1a64"] = a.checksum_fnv1a64;
    obj["bytes"] = a.bytes;
    out["artifacts"].push_back(std::move(obj));
  }
  return out.dump(2) + "\n";
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

double axis_transform(double v, bool log_scale) {
  return log_scale ? std::log10(v) : v;
}

const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace

std::string line_plot_svg(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<PlotSeries>& series, bool log_x,
                          bool log_y) {
  const double width = 720, height = 480;
  const double left = 70, right = 20, top = 40, bottom = 50;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_x && !(s.x[i] > 0)) continue;
      if (log_y && !(s.y[i] > 0)) continue;
      x_min = std::min(x_min, axis_transform(s.x[i], log_x));
      x_max = std::max(x_max, axis_transform(s.x[i], log_x));
      y_min = std::min(y_min, axis_transform(s.y[i], log_y));
      y_max = std::max(y_max, axis_transform(s.y[i], log_y));
    }
  }
  if (!(x_min <= x_max)) {
    x_min = 0;
    x_max = 1;
  }
  if (!(y_min <= y_max)) {
    y_min = 0;
    y_max = 1;
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const auto px = [&](double v) {
    return left + (axis_transform(v, log_x) - x_min) / (x_max - x_min) *
                      (width - left - right);
  };
  const auto py = [&](double v) {
    return height - bottom - (axis_transform(v, log_y) - y_min) /
                                 (y_max - y_min) * (height - top - bottom);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << title << "</text>\n";
  // Axes.
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
     << width - right << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  // End-point tick labels (in data units).
  const auto tick_label = [&](double t, bool log_scale) {
    return fmt_double(log_scale ? std::pow(10.0, t) : t);
  };
  os << "<text x=\"" << left << "\" y=\"" << height - bottom + 18
     << "\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_label(x_min, log_x) << "</text>\n";
  os << "<text x=\"" << width - right << "\" y=\"" << height - bottom + 18
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_label(x_max, log_x) << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << height - bottom
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_label(y_min, log_y) << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_label(y_max, log_y) << "</text>\n";
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 14
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << x_label << (log_x ? " (log)" : "") << "</text>\n";
  os << "<text x=\"16\" y=\"" << (top + height - bottom) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 "
     << (top + height - bottom) / 2 << ")\">" << y_label
     << (log_y ? " (log)" : "") << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    os << "<polyline fill=\"none\" stroke=\"" << series_color(si)
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_x && !(s.x[i] > 0)) continue;
      if (log_y && !(s.y[i] > 0)) continue;
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - right - 8 << "\" y=\""
       << top + 16 + 16 * si
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
          "fill=\""
       << series_color(si) << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mq
