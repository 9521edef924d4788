// Command-line front end: constant regeneration, pair analysis, recurrence
// verification, difference scanning, steering and figure-data export.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cantor/cantor_set.hpp"
#include "cantor/certificate.hpp"
#include "cantor/region.hpp"
#include "cantor/renorm.hpp"
#include "cantor/verify.hpp"

using namespace cantor;

namespace {

constexpr int kUsageError = 2;

std::string trim_zeros(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string dec(const Rational& v, int digits) { return to_decimal(v, digits); }

// Set spec argument: inline JSON or a path to a JSON file.
HomogeneousCantorSet load_set(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_set_spec(arg);
  std::ifstream in(arg);
  if (!in) throw invalid_parameter("cannot open set spec file: " + arg);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_set_spec(text);
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw invalid_parameter("cannot open output file: " + out_path);
  out << text;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::NotSatisfied: return "not satisfied";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

int cmd_constants(int digits, bool json) {
  const auto table = constants_table();
  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table)
      arr.push_back({{"id", row.id},
                     {"printed", row.printed},
                     {"value", dec(row.value, digits)},
                     {"match", row.match},
                     {"note", row.note}});
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  std::printf("%-28s %-26s %-*s %-5s %s\n", "id", "printed", digits + 4, "regenerated", "match",
              "note");
  for (const auto& row : table)
    std::printf("%-28s %-26s %-*s %-5s %s\n", row.id.c_str(), row.printed.c_str(), digits + 4,
                dec(row.value, digits).c_str(), row.match ? "yes" : "NO", row.note.c_str());
  return 0;
}

std::string newhouse_line(const CriteriaReport& rep) {
  if (rep.criterion_II == Verdict::Satisfied)
    return "Newhouse test: stable intersection (linked, product " +
           trim_zeros(dec(rep.thickness_product, 9)) + ")";
  if (rep.thickness_product == 1) return "Newhouse test: inconclusive (product = 1, boundary)";
  if (rep.thickness_product < 1)
    return "Newhouse test: inconclusive (" + truncate_decimal(rep.thickness_product, 9) + " < 1)";
  return "Newhouse test: inconclusive (not linked)";
}

int cmd_analyze(const std::string& spec_k, const std::string& spec_kp, int digits, bool json) {
  const auto K = load_set(spec_k);
  const auto Kp = load_set(spec_kp);
  const auto rep = criteria_report(K, Kp);
  if (json) {
    nlohmann::ordered_json j{
        {"p", dec(K.p, digits)},
        {"q", dec(Kp.p, digits)},
        {"tau_K", dec(thickness(K).tau(), digits)},
        {"tau_Kp", dec(thickness(Kp).tau(), digits)},
        {"hd_sum_lo", rep.hd_sum.lo},
        {"hd_sum_hi", rep.hd_sum.hi},
        {"thickness_product", dec(rep.thickness_product, digits)},
        {"lateral_rl", dec(rep.lateral_rl, digits)},
        {"lateral_lr", dec(rep.lateral_lr, digits)},
        {"linked", rep.linked},
        {"criterion_I", verdict_name(rep.criterion_I)},
        {"criterion_II", verdict_name(rep.criterion_II)},
        {"criterion_III", verdict_name(rep.criterion_III)},
        {"moreira_lateral", verdict_name(rep.moreira_lateral)},
        {"omega_member", rep.omega_member},
    };
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "K : p = " << trim_zeros(dec(K.p, digits)) << ", alpha = "
            << trim_zeros(dec(K.alpha(), digits)) << ", tau = "
            << trim_zeros(dec(thickness(K).tau(), digits)) << ", HD = "
            << hausdorff_dimension(K) << "\n";
  std::cout << "K': p = " << trim_zeros(dec(Kp.p, digits)) << ", alpha = "
            << trim_zeros(dec(Kp.alpha(), digits)) << ", tau = "
            << trim_zeros(dec(thickness(Kp).tau(), digits)) << ", HD = "
            << hausdorff_dimension(Kp) << "\n";
  std::cout << "HD sum enclosure: [" << rep.hd_sum.lo << ", " << rep.hd_sum.hi << "]\n";
  std::cout << "thickness product: " << trim_zeros(dec(rep.thickness_product, digits)) << "\n";
  std::cout << "lateral products: " << trim_zeros(dec(rep.lateral_rl, digits)) << ", "
            << trim_zeros(dec(rep.lateral_lr, digits)) << "\n";
  std::cout << "linked: " << (rep.linked ? "yes" : "no") << "\n";
  std::cout << "criterion I (HD sum < 1, empty stable intersection): "
            << verdict_name(rep.criterion_I) << "\n";
  std::cout << newhouse_line(rep) << "\n";
  std::cout << "criterion III (HD sum > 1, generic intersection): "
            << verdict_name(rep.criterion_III) << "\n";
  std::cout << "lateral thickness test: " << verdict_name(rep.moreira_lateral) << "\n";
  std::cout << "mysterious-region member: " << (rep.omega_member ? "yes" : "no") << "\n";
  return 0;
}

int cmd_verify(const std::string& mode, int grid, const std::string& out_path, int digits,
               const std::string& fault) {
  set_fault_injection(fault);
  const VerifyMode m = mode == "rigorous" ? VerifyMode::Rigorous : VerifyMode::Sample;
  const Certificate cert = verify_theorem2(m, grid);
  set_fault_injection("");
  write_output(out_path, cert.to_json(digits));
  const auto failing = cert.failing_ids();
  std::cerr << "certificate: " << cert.entries().size() << " entries, " << failing.size()
            << " failing";
  if (!out_path.empty()) std::cerr << ", written to " << out_path;
  std::cerr << "\n";
  for (const auto& id : failing) std::cerr << "FAIL " << id << "\n";
  return failing.empty() ? 0 : 1;
}

int cmd_difference(const std::string& spec_k, const std::string& spec_kp,
                   const std::string& lambda_text, int level, int digits, bool json) {
  const Rational lambda = rational_from_string(lambda_text);
  if (lambda == 0) throw invalid_parameter("lambda must be nonzero");
  const auto K = load_set(spec_k);
  const auto Kp = load_set(spec_kp);
  const IntervalSet diff = difference_scan(K, Kp, lambda, level);
  Rational largest = 0, largest_gap = 0;
  const auto& comps = diff.intervals();
  for (const auto& iv : comps) {
    const Rational len = iv.hi - iv.lo;
    if (len > largest) largest = len;
  }
  for (size_t i = 0; i + 1 < comps.size(); ++i) {
    const Rational gap = comps[i + 1].lo - comps[i].hi;
    if (gap > largest_gap) largest_gap = gap;
  }
  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& iv : comps) arr.push_back({dec(iv.lo, digits), dec(iv.hi, digits)});
    nlohmann::ordered_json j{{"level", level},
                             {"lambda", dec(lambda, digits)},
                             {"components", arr},
                             {"largest_length", dec(largest, digits)},
                             {"largest_gap", dec(largest_gap, digits)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "level " << level << " difference K - (" << trim_zeros(dec(lambda, digits))
            << ")K': " << comps.size() << " components\n";
  const size_t shown = std::min<size_t>(comps.size(), 40);
  for (size_t i = 0; i < shown; ++i)
    std::cout << "  [" << dec(comps[i].lo, digits) << ", " << dec(comps[i].hi, digits) << "]\n";
  if (shown < comps.size()) std::cout << "  ... (" << comps.size() - shown << " more)\n";
  std::cout << "largest component length: " << dec(largest, digits) << "\n";
  std::cout << "largest internal gap: " << dec(largest_gap, digits) << "\n";
  return 0;
}

// The t-fiber of the region over s, without the s-range guard so that
// out-of-range requests can still be attempted.
IntervalSet fiber(const Rational& s) {
  const auto& reg = region_L();
  if (reg.s_range.lo <= s && s <= reg.s_range.hi) return reg.section(s);
  const auto& fl = family_lines();
  const Interval base{reg.t_lo.eval(s), reg.t_hi.eval(s)};
  std::vector<Interval> gaps;
  gaps.push_back({std::max(fl.b2m.eval(s), fl.b2p.eval(s)), fl.a3.eval(s)});
  gaps.push_back({fl.b1.eval(s), std::min(fl.a2m.eval(s), fl.a2p.eval(s))});
  std::erase_if(gaps, [](const Interval& g) { return g.lo >= g.hi; });
  return IntervalSet(subtract_open(base, std::move(gaps)));
}

int cmd_steer(const std::string& s_text, const std::string& t_text, int max_cycles, int digits) {
  const Rational s = rational_from_string(s_text);
  const Rational t = rational_from_string(t_text);
  const auto& reg = region_L();
  if (!reg.contains(s, t, false))
    std::cerr << "warning: (s, t) lies outside the region; attempting anyway\n";
  const IntervalSet target = fiber(s);
  if (target.empty()) {
    std::cerr << "no target fiber at s = " << trim_zeros(dec(s, digits)) << "\n";
    return 1;
  }
  const auto res = steer({s, t, "", ""}, target, max_cycles);
  if (!res) {
    std::cout << "steering failed within " << max_cycles << " return cycles\n";
    return 1;
  }
  std::cout << "cycles: " << res->cycles << "\n";
  std::cout << "word K : " << (res->word_K.empty() ? "(empty)" : res->word_K) << "\n";
  std::cout << "word K': " << (res->word_Kp.empty() ? "(empty)" : res->word_Kp) << "\n";
  std::cout << "t final: " << dec(res->t_final, digits) << "\n";
  std::cout << "interior: " << (reg.contains(s, res->t_final, true) ? "yes" : "no") << "\n";
  return 0;
}

// Vertex of t + u1 s = w1 meeting t + u2 s = w2.
std::pair<Rational, Rational> line_meet(const HalfPlane& a, const HalfPlane& b) {
  if (a.u == b.u) throw invalid_parameter("parallel boundary lines");
  const Rational s = (a.w - b.w) / (a.u - b.u);
  return {s, Rational(a.w - a.u * s)};
}

int cmd_plot(const std::string& kind, const std::string& s_text, int grid,
             const std::string& out_path, int digits) {
  std::string csv;
  const auto row = [&](const std::string& label, const Rational& x, const Rational& y) {
    csv += label + "," + dec(x, digits) + "," + dec(y, digits) + "\n";
  };
  if (kind == "region") {
    const auto& reg = region_L();
    csv += "part,s,t\n";
    const Rational lo = reg.s_range.lo, hi = reg.s_range.hi;
    row("hull", lo, reg.t_lo.eval(lo));
    row("hull", hi, reg.t_lo.eval(hi));
    row("hull", hi, reg.t_hi.eval(hi));
    row("hull", lo, reg.t_hi.eval(lo));
    row("hull", lo, reg.t_lo.eval(lo));
    const std::array<const std::array<HalfPlane, 3>*, 2> slivers{&reg.delta1, &reg.delta2};
    for (int k = 0; k < 2; ++k) {
      const auto& tri = *slivers[k];
      const std::string label = "cut" + std::to_string(k + 1);
      const auto v0 = line_meet(tri[0], tri[1]);
      const auto v1 = line_meet(tri[1], tri[2]);
      const auto v2 = line_meet(tri[2], tri[0]);
      row(label, v0.first, v0.second);
      row(label, v1.first, v1.second);
      row(label, v2.first, v2.second);
      row(label, v0.first, v0.second);
    }
  } else if (kind == "intervals") {
    const auto& pc = pair_constants();
    csv += "s,a1,b1,a2,b2,a3,b3,j_lo,j_hi\n";
    for (int k = 0; k < grid; ++k) {
      const Rational s = pc.s1 + (pc.s2 - pc.s1) * k / (grid - 1);
      const auto fam = interval_family(s, family_sign(s));
      const auto J = j_interval(s);
      csv += dec(s, digits);
      for (const auto& iv : fam) csv += "," + dec(iv.lo, digits) + "," + dec(iv.hi, digits);
      csv += "," + dec(J.lo, digits) + "," + dec(J.hi, digits) + "\n";
    }
  } else if (kind == "squares") {
    if (s_text.empty()) throw invalid_parameter("--s is required for squares");
    const Rational s = rational_from_string(s_text);
    csv += "label,lo,hi\n";
    for (const auto& sq : square_family_14()) {
      const Interval pr = project(sq, s);
      csv += sq.label + "," + dec(pr.lo, digits) + "," + dec(pr.hi, digits) + "\n";
    }
    const Interval J = j_interval(s);
    csv += "J," + dec(J.lo, digits) + "," + dec(J.hi, digits) + "\n";
  } else {
    throw invalid_parameter("unknown plot kind: " + kind);
  }
  write_output(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"middle-Cantor pair analysis and recurrence verification"};
  app.require_subcommand(1);
  int digits = 12, grid = 1024, level = 8, max_cycles = 3;
  std::string mode = "sample", out_path, spec_k, spec_kp, lambda_text = "1";
  std::string s_text, t_text, kind, fault;
  bool json = false;

  const auto add_digits = [&](CLI::App* c) {
    c->add_option("--digits", digits, "output digits")->check(CLI::Range(6, 50));
  };

  auto* c_const = app.add_subcommand("constants", "regenerate every printed constant");
  add_digits(c_const);
  c_const->add_flag("--json", json, "JSON output");

  auto* c_an = app.add_subcommand("analyze", "classical criteria for a pair of sets");
  c_an->add_option("K", spec_k, "set spec (inline JSON or path)")->required();
  c_an->add_option("Kp", spec_kp, "set spec (inline JSON or path)")->required();
  add_digits(c_an);
  c_an->add_flag("--json", json, "JSON output");

  auto* c_ver = app.add_subcommand("verify", "run the recurrence certificate");
  c_ver->add_option("--mode", mode, "sample | rigorous")
      ->check(CLI::IsMember({"sample", "rigorous"}));
  c_ver->add_option("--grid", grid, "s-samples in sample mode")->check(CLI::Range(2, 1 << 20));
  c_ver->add_option("--out", out_path, "certificate path (default stdout)");
  add_digits(c_ver);
  c_ver->add_option("--inject-fault", fault, "force the named entry to fail (test hook)")
      ->group("");

  auto* c_diff = app.add_subcommand("difference", "scan the arithmetic difference K - lambda K'");
  c_diff->add_option("K", spec_k, "set spec")->required();
  c_diff->add_option("Kp", spec_kp, "set spec")->required();
  c_diff->add_option("--lambda", lambda_text, "nonzero factor (decimal or fraction)");
  c_diff->add_option("--level", level, "refinement level")->check(CLI::Range(0, 12));
  add_digits(c_diff);
  c_diff->add_flag("--json", json, "JSON output");

  auto* c_steer = app.add_subcommand("steer", "drive a configuration into the region interior");
  c_steer->add_option("s", s_text, "scale")->required();
  c_steer->add_option("t", t_text, "offset")->required();
  c_steer->add_option("--max-cycles", max_cycles, "return-cycle budget")->check(CLI::Range(1, 8));
  add_digits(c_steer);

  auto* c_plot = app.add_subcommand("plot-data", "CSV export of the figure geometry");
  c_plot->add_option("kind", kind, "region | intervals | squares")->required();
  c_plot->add_option("--s", s_text, "scale (required for squares)");
  c_plot->add_option("--grid", grid, "s-samples for intervals")->check(CLI::Range(2, 1 << 20));
  c_plot->add_option("--out", out_path, "output path (default stdout)");
  add_digits(c_plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (c_const->parsed()) return cmd_constants(digits, json);
    if (c_an->parsed()) return cmd_analyze(spec_k, spec_kp, digits, json);
    if (c_ver->parsed()) return cmd_verify(mode, grid, out_path, digits, fault);
    if (c_diff->parsed()) return cmd_difference(spec_k, spec_kp, lambda_text, level, digits, json);
    if (c_steer->parsed()) return cmd_steer(s_text, t_text, max_cycles, digits);
    if (c_plot->parsed())
      return cmd_plot(kind, s_text, grid == 1024 ? 65 : grid, out_path, digits);
  } catch (const invalid_parameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsageError;
}
