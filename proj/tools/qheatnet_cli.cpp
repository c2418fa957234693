// qheatnet command-line front end: photonic heat transport through linear
// superconducting microwave circuits (heat / sweep / sparams / from-touchstone).

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qheatnet/qheatnet.hpp"

namespace {

using namespace qheatnet;

struct CommonOpts {
  std::string config_path;
  std::string output_path;
  std::string format;
  int threads = 0;
  bool verbose = false;
};

unsigned resolve_threads(const CommonOpts& opts) {
  if (opts.threads > 0) return static_cast<unsigned>(opts.threads);
  if (const char* env = std::getenv("QHEATNET_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return default_thread_count();
}

RunConfig load_config(const CommonOpts& opts) {
  std::ifstream in(opts.config_path, std::ios::binary);
  if (!in) throw domain_error("cannot read config file: " + opts.config_path);
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse_run_config(buf.str());
  if (!opts.output_path.empty()) cfg.output.path = opts.output_path;
  if (!opts.format.empty()) cfg.output.format = opts.format;
  return cfg;
}

SParameterTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot read Touchstone file: " + path);
  return parse_touchstone(in);
}

TransmissionProvider provider_for(const RunConfig& cfg, bool verbose) {
  if (cfg.device)
    return make_transmission_provider(*cfg.device, cfg.flux, cfg.port1.resistance,
                                      cfg.port2.resistance);
  SParameterTable table = load_table(cfg.touchstone_path);
  if (std::abs(table.reference_resistance - cfg.port1.resistance) > 1e-9 ||
      std::abs(table.reference_resistance - cfg.port2.resistance) > 1e-9)
    throw domain_error("Touchstone reference resistance (" +
                       std::to_string(table.reference_resistance) +
                       " ohm) does not match the configured ports; renormalisation is not "
                       "supported");
  if (verbose) {
    std::cerr << "touchstone: " << table.size() << " points, max |S21| "
              << table.max_s21_magnitude() << ", reciprocity defect "
              << table.reciprocity_defect() << "\n";
  }
  return interpolated_provider(table);
}

QuadratureOptions quad_options(const RunConfig& cfg) {
  QuadratureOptions q = cfg.quadrature;
  if (cfg.device) {
    const double f_cap =
        q.f_max_override > 0.0
            ? q.f_max_override
            : 30.0 * constants::boltzmann *
                  std::max(cfg.port1.temperature, cfg.port2.temperature) / constants::planck;
    q.resonance_seeds = resonance_seeds(*cfg.device, cfg.flux, f_cap);
  }
  return q;
}

void print_power(const HeatResult& r) {
  std::printf("P_net = %.6e W (%.4f fW), quadrature error %.2e W, f_max %.4e Hz, %zu evaluations\n",
              r.net_power, r.net_power * 1e15, r.quadrature_error_estimate, r.f_max_used,
              r.evaluations);
}

int cmd_heat(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  if (cfg.sweep) throw domain_error("'heat' expects a config without a [sweep] section");
  QuadratureOptions q = quad_options(cfg);
  q.collect_spectrum = cfg.output.spectrum || (!cfg.output.path.empty());
  const HeatResult r =
      net_heat_flow(provider_for(cfg, opts.verbose), cfg.port1.temperature,
                    cfg.port2.temperature, q);
  print_power(r);
  if (!cfg.output.path.empty()) {
    if (cfg.output.format == "json") {
      nlohmann::json j = r;
      write_file(cfg.output.path, j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "f_Hz,S_Pnet_W_per_Hz\n";
      out.precision(17);
      for (const auto& [f, s] : r.spectrum) out << f << "," << s << "\n";
      write_file(cfg.output.path, out.str());
    }
  }
  return 0;
}

int cmd_sweep(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  if (!cfg.sweep) throw domain_error("'sweep' expects a [sweep] section in the config");
  if (!cfg.device) throw domain_error("'sweep' needs a circuit device, not a Touchstone table");
  const unsigned threads = resolve_threads(opts);
  const QuadratureOptions q = cfg.quadrature;

  std::vector<SweepPoint> points;
  SweepKind kind = SweepKind::Flux;
  const SweepSection& s = *cfg.sweep;
  if (s.flux1) {
    const std::size_t arity = flux_arity(*cfg.device);
    if (arity == 0) throw domain_error("flux sweep needs a flux-tunable device");
    if (s.flux2 && arity != 2) throw domain_error("flux2 sweep needs a two-qubit device");
    std::vector<std::vector<double>> grid;
    if (arity == 2) {
      grid = flux_grid(s.flux1->values(), s.flux2 ? s.flux2->values() : s.flux1->values());
      kind = SweepKind::Flux2D;
    } else {
      grid = flux_grid(s.flux1->values());
      kind = SweepKind::Flux;
    }
    points = sweep_flux(*cfg.device, grid, cfg.port1, cfg.port2, q, threads);
  } else if (s.resistance) {
    points = sweep_resistance(*cfg.device, cfg.flux, s.resistance->values(), cfg.port1,
                              cfg.port2, q, threads);
    kind = SweepKind::Resistance;
  } else {
    points = sweep_temperature(*cfg.device, cfg.flux, s.temperatures, cfg.port1, cfg.port2, q,
                               threads);
    kind = SweepKind::Temperature;
  }

  std::size_t failures = 0;
  double p_max = -1e300, p_min = 1e300;
  for (const SweepPoint& pt : points) {
    if (!pt.error.empty()) ++failures;
    if (pt.result) {
      p_max = std::max(p_max, pt.result->net_power);
      p_min = std::min(p_min, pt.result->net_power);
    }
  }
  std::printf("%zu points (%zu failed)\n", points.size(), failures);
  if (p_max > -1e300) {
    std::printf("P_max = %.6e W, P_min = %.6e W, modulation ratio = %.4f\n", p_max, p_min,
                p_max != 0.0 ? (p_max - p_min) / p_max : 0.0);
  }
  for (const SweepPoint& pt : points)
    if (!pt.error.empty() && opts.verbose)
      std::cerr << "point failed: " << pt.error << "\n";

  if (!cfg.output.path.empty()) {
    if (cfg.output.format == "json") {
      write_file(cfg.output.path, sweep_to_json(points, kind).dump(2) + "\n");
    } else {
      std::ostringstream out;
      write_sweep_csv(points, kind, out);
      write_file(cfg.output.path, out.str());
    }
  }
  return 0;
}

int cmd_sparams(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts);
  if (!cfg.device) throw domain_error("'sparams' needs a circuit device config");
  if (!cfg.frequency) throw domain_error("'sparams' needs a [frequency] section");
  const FrequencySection& fr = *cfg.frequency;

  std::vector<std::vector<double>> flux_points;
  if (cfg.sweep && cfg.sweep->flux1) {
    const std::size_t arity = flux_arity(*cfg.device);
    if (arity == 0) throw domain_error("flux sweep needs a flux-tunable device");
    flux_points = arity == 2 ? flux_grid(cfg.sweep->flux1->values(),
                                         cfg.sweep->flux2 ? cfg.sweep->flux2->values()
                                                          : cfg.sweep->flux1->values())
                             : flux_grid(cfg.sweep->flux1->values());
  } else {
    flux_points = {cfg.flux};
  }
  const bool with_flux = cfg.sweep && cfg.sweep->flux1;

  std::ostringstream out;
  out.precision(17);
  if (with_flux)
    out << "flux_phi0," << (flux_arity(*cfg.device) == 2 ? "flux2_phi0," : "");
  out << "f_Hz,abs_S21,arg_S21,abs_S11\n";
  for (const auto& flux : flux_points) {
    for (std::size_t i = 0; i < fr.points; ++i) {
      const double f = fr.start + (fr.stop - fr.start) * static_cast<double>(i) /
                                      static_cast<double>(fr.points - 1);
      const TwoPort m = build_network(*cfg.device, flux, f);
      const complex_t s21 = abcd_to_s21(m, cfg.port1.resistance, cfg.port2.resistance, f);
      const complex_t s11 = abcd_to_s11(m, cfg.port1.resistance, cfg.port2.resistance, f);
      if (with_flux) {
        out << flux.at(0) << ",";
        if (flux.size() == 2) out << flux.at(1) << ",";
      }
      out << f << "," << std::abs(s21) << "," << std::arg(s21) << "," << std::abs(s11) << "\n";
    }
  }
  if (!cfg.output.path.empty())
    write_file(cfg.output.path, out.str());
  else
    std::cout << out.str();
  return 0;
}

int cmd_from_touchstone(const CommonOpts& opts, const std::string& file, const std::string& t1,
                        const std::string& t2) {
  SParameterTable table = load_table(file);
  const double temp1 = units::parse(t1, units::Kind::Temperature, "--T1");
  const double temp2 = units::parse(t2, units::Kind::Temperature, "--T2");
  QuadratureOptions q;
  q.resonance_seeds = {table.frequency.front(), table.frequency.back()};
  q.collect_spectrum = !opts.output_path.empty();
  const HeatResult r = net_heat_flow(interpolated_provider(table), temp1, temp2, q);
  if (opts.verbose)
    std::cerr << "reference R " << table.reference_resistance << " ohm, reciprocity defect "
              << table.reciprocity_defect() << "\n";
  print_power(r);
  if (!opts.output_path.empty()) {
    nlohmann::json j = r;
    write_file(opts.output_path, j.dump(2) + "\n");
  }
  return 0;
}

void add_common(CLI::App* sub, CommonOpts& opts, bool needs_config) {
  auto* c = sub->add_option("--config", opts.config_path, "path to the run configuration");
  if (needs_config) c->required();
  sub->add_option("--output", opts.output_path, "output file path (overrides config)");
  sub->add_option("--format", opts.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", opts.threads, "worker threads (or QHEATNET_THREADS)");
  sub->add_flag("--verbose", opts.verbose, "diagnostic chatter on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic heat transport through linear superconducting microwave circuits"};
  app.require_subcommand(1);

  CommonOpts heat_opts, sweep_opts, sparams_opts, ts_opts;
  std::string ts_file, ts_t1, ts_t2;

  auto* heat = app.add_subcommand("heat", "net heat flow at a fixed operating point");
  add_common(heat, heat_opts, true);
  auto* sweep = app.add_subcommand("sweep", "heat flow over a flux/resistance/temperature grid");
  add_common(sweep, sweep_opts, true);
  auto* sparams = app.add_subcommand("sparams", "S-parameter table for plotting");
  add_common(sparams, sparams_opts, true);
  auto* ts = app.add_subcommand("from-touchstone", "heat flow from an external .s2p table");
  add_common(ts, ts_opts, false);
  ts->add_option("--file", ts_file, "Touchstone v1 .s2p file")->required();
  ts->add_option("--T1", ts_t1, "bath 1 temperature, e.g. '350 mK'")->required();
  ts->add_option("--T2", ts_t2, "bath 2 temperature, e.g. '120 mK'")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (heat->parsed()) return cmd_heat(heat_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (sparams->parsed()) return cmd_sparams(sparams_opts);
    if (ts->parsed()) return cmd_from_touchstone(ts_opts, ts_file, ts_t1, ts_t2);
  } catch (const qheatnet::parse_error& e) {
    std::cerr << "config/input error: " << e.what() << "\n";
    return 2;
  } catch (const qheatnet::domain_error& e) {
    std::cerr << "config/input error: " << e.what() << "\n";
    return 2;
  } catch (const qheatnet::quadrature_failure& e) {
    std::cerr << "numerical error: " << e.what() << " (partial P_net = "
              << e.partial().net_power << " W)\n";
    return 3;
  } catch (const qheatnet::singular_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
