#include <complex>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kfree/io.hpp"

using nlohmann::ordered_json;
using namespace kfree;

namespace {

constexpr const char* kVersion = "kfree 0.1.0";

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NonMonogenicAtP:
    case Errc::MismatchFound:
    case Errc::EigenrelationViolated:
    case Errc::Unfactorable:
      return 2;
    default:
      return 1;  // input or request problem
  }
}

ordered_json truncated_json(const TruncatedValue& tv, bool exact_zero = false) {
  ordered_json j;
  j["value"] = format_value(tv.value, exact_zero);
  j["tail_bound"] = static_cast<double>(tv.tail_bound);
  j["cutoff"] = tv.cutoff;
  return j;
}

void emit(const ordered_json& report) { std::cout << report.dump(2) << "\n"; }

long double rat_ld(const Rat& r) { return static_cast<long double>(r); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-free integers in monogenic number fields: sieve, correlations, spectrum"};
  app.require_subcommand(1);

  std::string field_spec = "1,0,1";
  int k = 2;
  app.add_option("--field", field_spec,
                 "minimal polynomial coefficients, constant term first (monic implied)")
      ->capture_default_str();
  app.add_option("--k", k, "power-free exponent (k >= 2)")->capture_default_str();

  auto* sieve_cmd = app.add_subcommand("sieve", "sieve the k-free grid on an L1 ball");
  sieve_cmd->fallthrough();
  long long radius = 50;
  std::string csv_path, bitmap_path;
  sieve_cmd->add_option("--radius", radius, "L1 ball radius")->capture_default_str();
  sieve_cmd->add_option("--csv", csv_path, "write per-point CSV");
  sieve_cmd->add_option("--bitmap", bitmap_path, "write PGM bitmap (degree 2)");

  auto* density_cmd =
      app.add_subcommand("density", "empirical vs analytic k-free density");
  density_cmd->fallthrough();
  long long cutoff = 100000;
  density_cmd->add_option("--radius", radius, "L1 ball radius")->capture_default_str();
  density_cmd->add_option("--cutoff", cutoff, "Euler product prime-norm cutoff")
      ->capture_default_str();

  auto* correlate_cmd =
      app.add_subcommand("correlate", "empirical correlation on the sieved grid");
  correlate_cmd->fallthrough();
  std::string shifts_text, modulus_text;
  correlate_cmd->add_option("--shifts", shifts_text, "semicolon-separated shift elements")
      ->required();
  correlate_cmd->add_option("--modulus", modulus_text, "constraint ideal literal");
  correlate_cmd->add_option("--radius", radius, "averaging ball radius")
      ->capture_default_str();

  auto* predict_cmd =
      app.add_subcommand("predict", "analytic correlation via the Euler product");
  predict_cmd->fallthrough();
  predict_cmd->add_option("--shifts", shifts_text, "semicolon-separated shift elements")
      ->required();
  predict_cmd->add_option("--modulus", modulus_text, "constraint ideal literal");
  predict_cmd->add_option("--cutoff", cutoff, "Euler product prime-norm cutoff")
      ->capture_default_str();

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "reduced characters with N(level^k) <= D");
  spectrum_cmd->fallthrough();
  long long max_level_norm = 25;
  std::string svg_path;
  spectrum_cmd->add_option("--max-level-norm", max_level_norm, "bound D on N(level^k)")
      ->capture_default_str();
  spectrum_cmd->add_option("--cutoff", cutoff, "sigma weight Euler cutoff")
      ->capture_default_str();
  spectrum_cmd->add_option("--csv", csv_path, "write character table CSV");
  spectrum_cmd->add_option("--svg", svg_path, "write scatter SVG (degree 2)");

  auto* annihilator_cmd =
      app.add_subcommand("annihilator", "rational torus points annihilating an ideal");
  annihilator_cmd->fallthrough();
  std::string ideal_text;
  annihilator_cmd->add_option("--ideal", ideal_text, "ideal generator literal")->required();
  annihilator_cmd->add_option("--csv", csv_path, "write point table CSV");

  auto* verify_cmd = app.add_subcommand(
      "verify", "rotation eigenrelations, Parseval mass, sieve crosscheck");
  verify_cmd->fallthrough();
  std::vector<long long> rotation_d{4, 25};
  long long parseval_d = 1000;
  int samples = 200;
  uint64_t seed = 1;
  verify_cmd->add_option("--rotation-d", rotation_d, "truncation bounds for O/p^k product")
      ->capture_default_str();
  verify_cmd->add_option("--parseval-d", parseval_d, "level norm bound")
      ->capture_default_str();
  verify_cmd->add_option("--radius", radius, "sieve radius for the crosscheck")
      ->capture_default_str();
  verify_cmd->add_option("--samples", samples, "crosscheck sample count")
      ->capture_default_str();
  verify_cmd->add_option("--seed", seed, "crosscheck RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  ordered_json report;
  ordered_json config;
  config["field"] = field_spec;
  config["k"] = k;
  report["version"] = kVersion;

  try {
    NumberField F = parse_field(field_spec);
    if (app.got_subcommand(sieve_cmd)) {
      config["radius"] = radius;
      if (!csv_path.empty()) config["csv"] = csv_path;
      if (!bitmap_path.empty()) config["bitmap"] = bitmap_path;
      report["command"] = "sieve";
      report["config"] = config;
      SieveGrid g = sieve(F, k, radius);
      report["points"] = static_cast<long long>(g.idx.count());
      report["kfree"] = g.ones();
      report["density"] = g.density();
      report["max_elem_norm"] = to_ll(g.max_elem_norm);
      if (!csv_path.empty()) export_grid_csv(g, csv_path);
      if (!bitmap_path.empty()) export_grid_pgm(g, bitmap_path);
    } else if (app.got_subcommand(density_cmd)) {
      config["radius"] = radius;
      config["cutoff"] = cutoff;
      report["command"] = "density";
      report["config"] = config;
      SieveGrid g = sieve(F, k, radius);
      TruncatedValue z = dedekind_zeta(F, k, cutoff);
      TruncatedValue inv{1.0L / z.value, z.tail_bound / (1.0L - z.tail_bound), cutoff};
      report["empirical"] = g.density();
      report["analytic"] = truncated_json(inv);
      report["difference"] =
          static_cast<double>(g.density() - static_cast<double>(inv.value));
    } else if (app.got_subcommand(correlate_cmd)) {
      config["shifts"] = shifts_text;
      config["radius"] = radius;
      if (!modulus_text.empty()) config["modulus"] = modulus_text;
      report["command"] = "correlate";
      report["config"] = config;
      CorrelationSpec spec;
      spec.k = k;
      spec.shifts = parse_shifts(F, shifts_text);
      if (!modulus_text.empty()) spec.modulus = parse_ideal(F, modulus_text);
      long long max_shift = 0;
      for (const Elem& s : spec.shifts) max_shift = std::max(max_shift, to_ll(geom_norm(s)));
      SieveGrid g = sieve(F, k, radius + max_shift);
      Rat v = empirical_correlation(g, spec, radius);
      report["value"] = format_rat(v);
      report["value_decimal"] = static_cast<double>(rat_ld(v));
      TruncatedValue z = dedekind_zeta(F, k, cutoff);
      report["natural_value"] = static_cast<double>(z.value * rat_ld(v));
    } else if (app.got_subcommand(predict_cmd)) {
      config["shifts"] = shifts_text;
      config["cutoff"] = cutoff;
      if (!modulus_text.empty()) config["modulus"] = modulus_text;
      report["command"] = "predict";
      report["config"] = config;
      CorrelationSpec spec;
      spec.k = k;
      spec.shifts = parse_shifts(F, shifts_text);
      if (!modulus_text.empty()) spec.modulus = parse_ideal(F, modulus_text);
      AnalyticResult r = spec.modulus && !spec.modulus->is_unit_ideal()
                             ? analytic_S(F, spec, cutoff)
                             : analytic_correlation(F, spec, cutoff);
      report["result"] = truncated_json(r.tv, r.exact_zero);
      report["exact_zero"] = r.exact_zero;
      if (r.witness) report["witness_prime"] = ideal_str(*r.witness);
      TruncatedValue z = dedekind_zeta(F, k, cutoff);
      report["natural_value"] = static_cast<double>(z.value * r.tv.value);
    } else if (app.got_subcommand(spectrum_cmd)) {
      config["max_level_norm"] = max_level_norm;
      config["cutoff"] = cutoff;
      if (!csv_path.empty()) config["csv"] = csv_path;
      if (!svg_path.empty()) config["svg"] = svg_path;
      report["command"] = "spectrum";
      report["config"] = config;
      auto chars = lambda_approx(F, k, max_level_norm);
      report["characters"] = static_cast<long long>(chars.size());
      ordered_json levels = ordered_json::array();
      Ideal last = unit_ideal(F);
      bool first = true;
      for (const Character& chi : chars) {
        if (!first && chi.level == last) continue;
        first = false;
        last = chi.level;
        SpectralWeights w = weights(chi.level, k, cutoff);
        ordered_json lj;
        lj["level"] = ideal_str(chi.level);
        lj["norm"] = to_ll(chi.level.norm);
        lj["mu"] = w.mu;
        lj["sigma"] = truncated_json(w.sigma);
        lj["g"] = truncated_json(w.g);
        levels.push_back(lj);
      }
      report["levels"] = levels;
      if (!csv_path.empty()) export_lambda_csv(F, chars, k, cutoff, csv_path);
      if (!svg_path.empty()) export_lambda_svg(chars, k, svg_path);
    } else if (app.got_subcommand(annihilator_cmd)) {
      config["ideal"] = ideal_text;
      if (!csv_path.empty()) config["csv"] = csv_path;
      report["command"] = "annihilator";
      report["config"] = config;
      Ideal a = parse_ideal(F, ideal_text);
      auto pts = annihilator_points(a);
      report["ideal"] = ideal_str(a);
      report["norm"] = to_ll(a.norm);
      report["points"] = static_cast<long long>(pts.size());
      ordered_json rows = ordered_json::array();
      for (const auto& y : pts) {
        ordered_json row = ordered_json::array();
        for (const Rat& r : y) row.push_back(format_rat(r));
        rows.push_back(row);
      }
      report["rows"] = rows;
      if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        for (int i = 0; i < F.degree; ++i) out << "num" << i << ',';
        out << "den\n";
        for (const auto& y : pts) {
          Int q = 1;
          for (const Rat& r : y) q = q / gcd(q, denominator(r)) * denominator(r);
          for (const Rat& r : y) out << numerator(r * Rat(q)) << ',';
          out << q << '\n';
        }
      }
    } else if (app.got_subcommand(verify_cmd)) {
      config["rotation_d"] = rotation_d;
      config["parseval_d"] = parseval_d;
      config["radius"] = radius;
      config["samples"] = samples;
      config["seed"] = seed;
      report["command"] = "verify";
      report["config"] = config;
      std::vector<std::vector<long long>> translations;
      for (int i = 0; i < F.degree; ++i) {
        std::vector<long long> v(static_cast<size_t>(F.degree), 0);
        v[static_cast<size_t>(i)] = 1;
        translations.push_back(v);
      }
      ordered_json rotations = ordered_json::array();
      for (long long D : rotation_d) {
        RotationReport r = rotation_eigencheck(F, k, D, translations);
        ordered_json rj;
        rj["D"] = D;
        rj["group_order"] = r.group_order;
        rj["characters"] = r.characters;
        rj["relation_checks"] = r.relation_checks;
        rj["orthogonal_pairs"] = r.orthogonal_pairs;
        rotations.push_back(rj);
      }
      report["rotation"] = rotations;
      ParsevalResult pv = parseval_check(F, k, parseval_d);
      report["parseval"] = truncated_json(pv.total);
      bool increasing = true;
      for (size_t i = 1; i < pv.partial.size(); ++i)
        if (pv.partial[i].second <= pv.partial[i - 1].second) increasing = false;
      report["parseval_increasing"] = increasing;
      SieveGrid g = sieve(F, k, radius);
      CrosscheckReport cr = crosscheck_sample(g, samples, seed);
      report["crosscheck_samples"] = cr.samples;
      report["crosscheck_mismatches"] = cr.mismatches;
    }
  } catch (const Error& e) {
    ordered_json err;
    err["error"]["code"] = errc_name(e.code);
    err["error"]["message"] = e.what();
    err["version"] = kVersion;
    err["config"] = config;
    emit(err);
    return exit_code_for(e.code);
  }

  emit(report);
  return 0;
}
