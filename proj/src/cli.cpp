#include "fracstab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "fracstab/boundary.hpp"
#include "fracstab/critical.hpp"
#include "fracstab/errors.hpp"
#include "fracstab/fdesolve.hpp"
#include "fracstab/output.hpp"
#include "fracstab/stability.hpp"

namespace fracstab::cli {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto is_space = [](unsigned char ch) { return std::isspace(ch) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), is_space));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), is_space).base(), s.end());
  return s;
}

// Pulls --config PATH out of args and appends every config key that is not
// already given as a flag.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> config_path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (std::next(it) == args.end()) throw CLI::ParseError("--config requires a path", kUsage);
      config_path = *std::next(it);
      it = args.erase(it, std::next(it, 2));
    } else if (it->rfind("--config=", 0) == 0) {
      config_path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  if (!config_path) return args;

  std::ifstream file(*config_path);
  if (!file) throw CLI::ParseError("cannot read config file '" + *config_path + "'", kUsage);
  std::set<std::string> given;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
  }
  std::string line;
  while (std::getline(file, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ParseError("config line without '=': " + line, kUsage);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (given.count(key)) continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

json meta_for(const std::string& command, const json& inputs, std::optional<std::uint64_t> seed) {
  return json{{"command", command},
              {"version", std::string(kVersion)},
              {"seed", seed ? json(*seed) : json()},
              {"inputs", inputs}};
}

void emit_json(const json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
  }
}

json verdict_json(const StabilityVerdict& v) {
  return json{{"kind", std::string(to_string(v.kind))},
              {"provenance", std::string(to_string(v.provenance))},
              {"decay_exponent", v.decay_exponent ? json(*v.decay_exponent) : json()}};
}

struct EquationFlags {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q = 0.0;

  void attach(CLI::App* sub, bool with_orders = true) {
    sub->add_option("--alpha", alpha, "coefficient of D^q1")->required();
    sub->add_option("--beta", beta, "coefficient of D^q2")->required();
    sub->add_option("--gamma", gamma, "coefficient of x")->required();
    if (with_orders) {
      sub->add_option("--q1", q1, "lowest order")->required();
      sub->add_option("--q2", q2, "middle order")->required();
      sub->add_option("--q", q, "leading order")->required();
    }
  }
  Coefficients coefficients() const { return {alpha, beta, gamma}; }
  FractionalOrders orders() const { return {q1, q2, q}; }
  json inputs() const {
    return json{{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"q1", q1}, {"q2", q2}, {"q", q}};
  }
};

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability analysis of three-term Caputo fractional differential equations", "fracstab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::function<int()> action;

  // classify
  EquationFlags cls;
  double cls_tol = 1e-9;
  std::string cls_format = "json", cls_out;
  auto* classify_cmd = app.add_subcommand("classify", "stability verdict for one configuration");
  cls.attach(classify_cmd);
  classify_cmd->add_option("--tol", cls_tol, "relative band around the boundary");
  classify_cmd->add_option("--format", cls_format)->check(CLI::IsMember({"json"}));
  classify_cmd->add_option("--out", cls_out, "write JSON here instead of stdout");
  classify_cmd->callback([&] {
    action = [&] {
      const StabilityVerdict v = classify(cls.coefficients(), cls.orders(), cls_tol);
      json inputs = cls.inputs();
      inputs["tol"] = cls_tol;
      emit_json({{"meta", meta_for("classify", inputs, std::nullopt)}, {"data", verdict_json(v)}},
                cls_out, out);
      return v.kind == VerdictKind::OnBoundary ? kBoundary : kOk;
    };
  });

  // curve
  double cur_gamma = 0, cur_q1 = 0, cur_q2 = 0, cur_q = 0, cur_wmin = 1e-4, cur_wmax = 1e4;
  int cur_samples = 2001;
  std::string cur_out, cur_format = "csv";
  auto* curve_cmd = app.add_subcommand("curve", "sample the boundary curve Gamma");
  curve_cmd->add_option("--gamma", cur_gamma)->required();
  curve_cmd->add_option("--q1", cur_q1)->required();
  curve_cmd->add_option("--q2", cur_q2)->required();
  curve_cmd->add_option("--q", cur_q)->required();
  curve_cmd->add_option("--omega-min", cur_wmin);
  curve_cmd->add_option("--omega-max", cur_wmax);
  curve_cmd->add_option("--samples", cur_samples);
  curve_cmd->add_option("--out", cur_out)->required();
  curve_cmd->add_option("--format", cur_format)->check(CLI::IsMember({"csv", "json", "svg"}));
  curve_cmd->callback([&] {
    action = [&] {
      const FractionalOrders o(cur_q1, cur_q2, cur_q);
      const auto samples = sample_curve({cur_gamma, o, cur_wmin, cur_wmax, cur_samples});
      const json inputs{{"gamma", cur_gamma}, {"q1", cur_q1}, {"q2", cur_q2}, {"q", cur_q},
                        {"omega_min", cur_wmin}, {"omega_max", cur_wmax}, {"samples", cur_samples}};
      const OutputFormat fmt = parse_format(cur_format);
      if (fmt == OutputFormat::Svg) {
        Series s{"q1=" + num(cur_q1) + " q2=" + num(cur_q2) + " q=" + num(cur_q), {}, {}};
        for (const auto& p : samples) {
          s.x.push_back(p.alpha);
          s.y.push_back(p.beta);
        }
        write_plot({s}, {"Stability boundary, gamma = " + num(cur_gamma), "alpha", "beta"}, cur_out);
      } else {
        Table t{{"omega", "alpha", "beta"}, {}};
        for (const auto& p : samples) t.rows.push_back({p.omega, p.alpha, p.beta});
        write_table(t, fmt, cur_out, meta_for("curve", inputs, std::nullopt));
      }
      return static_cast<int>(kOk);
    };
  });

  // region
  double reg_gamma = 0, reg_wmin = 1e-4, reg_wmax = 1e4;
  int reg_triplets = 1331, reg_samples = 200;
  std::uint64_t reg_seed = 0;
  std::string reg_out, reg_format = "csv";
  auto* region_cmd = app.add_subcommand("region", "boundary curves for random order triplets");
  region_cmd->add_option("--gamma", reg_gamma)->required();
  region_cmd->add_option("--triplets", reg_triplets);
  region_cmd->add_option("--seed", reg_seed);
  region_cmd->add_option("--samples", reg_samples, "points per curve");
  region_cmd->add_option("--omega-min", reg_wmin);
  region_cmd->add_option("--omega-max", reg_wmax);
  region_cmd->add_option("--out", reg_out)->required();
  region_cmd->add_option("--format", reg_format)->check(CLI::IsMember({"csv", "json", "svg"}));
  region_cmd->callback([&] {
    action = [&] {
      const auto curves = region_sweep(reg_gamma, reg_triplets, reg_seed, reg_samples, reg_wmin, reg_wmax);
      const json inputs{{"gamma", reg_gamma}, {"triplets", reg_triplets}, {"samples", reg_samples},
                        {"omega_min", reg_wmin}, {"omega_max", reg_wmax}};
      const OutputFormat fmt = parse_format(reg_format);
      if (fmt == OutputFormat::Svg) {
        std::vector<Series> series;
        for (const auto& c : curves) {
          Series s{"", {}, {}};
          for (const auto& p : c.samples) {
            s.x.push_back(p.alpha);
            s.y.push_back(p.beta);
          }
          series.push_back(std::move(s));
        }
        write_plot(series, {"Boundary curves, gamma = " + num(reg_gamma), "alpha", "beta"}, reg_out);
      } else if (fmt == OutputFormat::Json) {
        json data = json::array();
        for (const auto& c : curves) {
          json pts = json::array();
          for (const auto& p : c.samples) pts.push_back({p.omega, p.alpha, p.beta});
          data.push_back({{"q1", c.orders.q1()}, {"q2", c.orders.q2()}, {"q", c.orders.q()}, {"samples", pts}});
        }
        write_text(reg_out, json{{"meta", meta_for("region", inputs, reg_seed)}, {"data", data}}.dump(2) + "\n");
      } else {
        Table t{{"triplet", "q1", "q2", "q", "omega", "alpha", "beta"}, {}};
        for (std::size_t i = 0; i < curves.size(); ++i) {
          const auto& o = curves[i].orders;
          for (const auto& p : curves[i].samples) {
            t.rows.push_back({static_cast<double>(i), o.q1(), o.q2(), o.q(), p.omega, p.alpha, p.beta});
          }
        }
        write_table(t, fmt, reg_out);
      }
      return static_cast<int>(kOk);
    };
  });

  // roots
  EquationFlags rts;
  double rts_tol = 1e-9;
  std::string rts_out;
  auto* roots_cmd = app.add_subcommand("roots", "count and locate roots with Re s > 0");
  rts.attach(roots_cmd);
  roots_cmd->add_option("--tol", rts_tol);
  roots_cmd->add_option("--out", rts_out);
  roots_cmd->callback([&] {
    action = [&] {
      json inputs = rts.inputs();
      inputs["tol"] = rts_tol;
      const json meta = meta_for("roots", inputs, std::nullopt);
      const Coefficients c = rts.coefficients();
      const FractionalOrders o = rts.orders();
      try {
        const RootCount rc = count_unstable_roots(c, o, rts_tol);
        json roots = json::array();
        for (std::size_t i = 0; i < rc.roots.size(); ++i) {
          roots.push_back({{"re", rc.roots[i].real()}, {"im", rc.roots[i].imag()}, {"multiplicity", rc.multiplicities[i]}, {"coarse", static_cast<bool>(rc.coarse[i])}});
        }
        const json data{{"count", rc.count},
                        {"roots", roots},
                        {"annulus", {{"l", rc.annulus.inner}, {"L", rc.annulus.outer}}},
                        {"winding", rc.winding},
                        {"winding_residual", rc.winding_residual},
                        {"on_boundary", false}};
        emit_json({{"meta", meta}, {"data", data}}, rts_out, out);
        return static_cast<int>(kOk);
      } catch (const BoundaryProximity& e) {
        emit_json({{"meta", meta}, {"data", {{"on_boundary", true}, {"message", e.what()}}}}, rts_out, out);
        return static_cast<int>(kBoundary);
      }
    };
  });

  // critical-alpha
  double ca_gamma = 0, ca_q1 = 0, ca_beta = 0;
  std::optional<double> ca_q2, ca_q;
  std::string ca_model = "general", ca_out;
  double ca_tol = 1e-10;
  auto* ca_cmd = app.add_subcommand("critical-alpha", "critical alpha for a fixed beta");
  ca_cmd->add_option("--gamma", ca_gamma)->required();
  ca_cmd->add_option("--q1", ca_q1)->required();
  ca_cmd->add_option("--q2", ca_q2);
  ca_cmd->add_option("--q", ca_q);
  ca_cmd->add_option("--beta", ca_beta);
  ca_cmd->add_option("--model", ca_model)->check(CLI::IsMember({"basset", "bagley", "general"}));
  ca_cmd->add_option("--tol", ca_tol);
  ca_cmd->add_option("--out", ca_out);
  ca_cmd->callback([&] {
    action = [&] {
      json inputs{{"gamma", ca_gamma}, {"q1", ca_q1}, {"beta", ca_beta}, {"model", ca_model},
                  {"q2", ca_q2 ? json(*ca_q2) : json()}, {"q", ca_q ? json(*ca_q) : json()}};
      CriticalResult r{};
      if (ca_model == "basset") {
        r = {basset_critical_alpha(ca_gamma, ca_q1), std::tan(ca_q1 * std::numbers::pi / 2.0), 0.0};
      } else if (ca_model == "bagley") {
        r = {bagley_torvik_critical_alpha(ca_gamma, ca_q1), 1.0, 0.0};
      } else {
        if (!ca_q2 || !ca_q) throw PreconditionError("critical-alpha: --model general needs --q2 and --q");
        r = critical_alpha(ca_gamma, FractionalOrders(ca_q1, *ca_q2, *ca_q), ca_beta, ca_tol);
      }
      const json data{{"value", r.value}, {"omega_at_crossing", r.omega_at_crossing}, {"residual", r.residual}};
      emit_json({{"meta", meta_for("critical-alpha", inputs, std::nullopt)}, {"data", data}}, ca_out, out);
      return static_cast<int>(kOk);
    };
  });

  // critical-order
  double co_alpha = 0, co_beta = 0, co_gamma = 0, co_q2 = 0, co_q = 0, co_tol = 1e-10;
  std::string co_out;
  auto* co_cmd = app.add_subcommand("critical-order", "critical q1 where the verdict flips");
  co_cmd->add_option("--alpha", co_alpha)->required();
  co_cmd->add_option("--beta", co_beta)->required();
  co_cmd->add_option("--gamma", co_gamma)->required();
  co_cmd->add_option("--q2", co_q2)->required();
  co_cmd->add_option("--q", co_q)->required();
  co_cmd->add_option("--tol", co_tol);
  co_cmd->add_option("--out", co_out);
  co_cmd->callback([&] {
    action = [&] {
      const json inputs{{"alpha", co_alpha}, {"beta", co_beta}, {"gamma", co_gamma}, {"q2", co_q2}, {"q", co_q}, {"tol", co_tol}};
      json data;
      try {
        const CriticalResult r = critical_order_q1({co_alpha, co_beta, co_gamma}, co_q2, co_q, co_tol);
        data = {{"found", true},
                {"value", r.value},
                {"omega_at_crossing", r.omega_at_crossing},
                {"residual", r.residual},
                {"crossings", r.crossings},
                {"selection", "largest q1 crossing below q2"}};
        if (r.crossings > 1) err << "warning: " << r.crossings << " sign changes on the q1 grid\n";
      } catch (const NoCriticalOrder& e) {
        data = {{"found", false}, {"value", nullptr}, {"message", e.what()}};
      }
      emit_json({{"meta", meta_for("critical-order", inputs, std::nullopt)}, {"data", data}}, co_out, out);
      return static_cast<int>(kOk);
    };
  });

  // simulate
  EquationFlags sim;
  double sim_x0 = 0, sim_tf = 0, sim_step = 0;
  std::optional<double> sim_x1;
  std::string sim_out, sim_format = "csv";
  auto* sim_cmd = app.add_subcommand("simulate", "time-domain trajectory");
  sim.attach(sim_cmd);
  sim_cmd->add_option("--x0", sim_x0)->required();
  sim_cmd->add_option("--x1", sim_x1, "x'(0), required when q > 1");
  sim_cmd->add_option("--t-final", sim_tf)->required();
  sim_cmd->add_option("--step", sim_step)->required();
  sim_cmd->add_option("--out", sim_out)->required();
  sim_cmd->add_option("--format", sim_format)->check(CLI::IsMember({"csv", "json", "svg"}));
  sim_cmd->callback([&] {
    action = [&] {
      const Trajectory tr = simulate(sim.coefficients(), sim.orders(), {sim_x0, sim_x1}, sim_tf, sim_step);
      json inputs = sim.inputs();
      inputs["x0"] = sim_x0;
      inputs["x1"] = sim_x1 ? json(*sim_x1) : json();
      inputs["t_final"] = sim_tf;
      inputs["step"] = sim_step;
      json meta = meta_for("simulate", inputs, std::nullopt);
      meta["diverged"] = tr.diverged;
      const OutputFormat fmt = parse_format(sim_format);
      if (fmt == OutputFormat::Svg) {
        Series s{"q1=" + num(sim.q1), {}, {}};
        for (std::size_t k = 0; k < tr.values.size(); ++k) {
          s.x.push_back(tr.time(k));
          s.y.push_back(tr.values[k]);
        }
        write_plot({s}, {"Trajectory", "t", "x"}, sim_out);
      } else {
        Table t{{"t", "x"}, {}};
        for (std::size_t k = 0; k < tr.values.size(); ++k) t.rows.push_back({tr.time(k), tr.values[k]});
        write_table(t, fmt, sim_out, meta);
      }
      if (tr.diverged) err << "warning: trajectory diverged at t = " << tr.time(tr.values.size() - 1) << "\n";
      return static_cast<int>(kOk);
    };
  });

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    return action();
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace fracstab::cli
