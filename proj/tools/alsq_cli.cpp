// alsq: square roots of atomic measures under multiplicative convolution.

#include "alsq/analyze.hpp"
#include "alsq/generate.hpp"
#include "alsq/io.hpp"
#include "alsq/recurrence.hpp"
#include "alsq/shift.hpp"
#include "alsq/solver.hpp"
#include "alsq/testing/acceptance.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <iterator>
#include <string>

namespace {

using namespace alsq;

enum Exit { kOk = 0, kUsage = 1, kImpossible = 2, kUndetermined = 3 };

struct Globals {
  unsigned precision = 128;
  std::string tol = "2^-64";
  bool json = false;
  bool diagram = false;
  std::uint64_t seed = 0x5eed;
  std::size_t max_candidates = 4096;

  NumericConfig config() const {
    NumericConfig c;
    c.precision_bits = precision;
    c.tolerance = parse_tolerance(tol);
    c.seed = seed;
    c.max_candidates = max_candidates;
    return c;
  }

  static double parse_tolerance(const std::string& t) {
    auto caret = t.find('^');
    double v = caret == std::string::npos ? std::stod(t) : std::pow(std::stod(t.substr(0, caret)), std::stod(t.substr(caret + 1)));
    if (!(v > 0) || !(v < 1)) throw std::invalid_argument("--tol must lie in (0, 1)");
    return v;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return read_file(path);
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Witness: return kOk;
    case Outcome::Impossible: return kImpossible;
    case Outcome::Undetermined: return kUndetermined;
  }
  return kUndetermined;
}

int print_verdict(const Verdict& v, const Globals& g, const AnyMeasure& mu) {
  if (g.json) {
    std::cout << verdict_to_json(v).dump(2) << "\n";
  } else {
    std::cout << verdict_text(v) << "\n";
    if (g.diagram) {
      auto support = std::visit([](const auto& m) { return m.support(); }, mu);
      if (support.size() <= kMaxDiagramAtoms)
        std::cout << "\n" << render_diagram(pair_diagram(support));
      else
        std::cout << "\n(diagram omitted: more than " << kMaxDiagramAtoms << " atoms; use --json)\n";
    }
  }
  return exit_for(v.outcome);
}

AnyMeasure to_common(const AnyMeasure& m, bool real, unsigned bits) {
  if (!real) return m;
  return any_to_real(m, bits);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square roots of atomic measures under multiplicative convolution"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--precision", g.precision, "Working precision in bits")->check(CLI::Range(32u, 1u << 20));
  app.add_option("--tol", g.tol, "Acceptance tolerance, decimal or b^e");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--diagram", g.diagram, "Print the product diagram");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--max-candidates", g.max_candidates, "Cap on candidate root supports");

  std::string input, input2;
  std::size_t terms = 10, max_order = 8;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report on a measure");
  analyze_cmd->add_option("file", input, "Measure JSON, or - for stdin")->required();
  std::size_t shift_terms = 0;
  analyze_cmd->add_option("--shift", shift_terms, "Include shift tables with this many terms");

  auto* sqrt_cmd = app.add_subcommand("sqrt", "Find rho >= 0 with rho * rho = mu");
  sqrt_cmd->add_option("file", input, "Measure JSON, or - for stdin")->required();

  auto* aluthge_cmd = app.add_subcommand("aluthge", "Find nu >= 0 on supp(mu) with nu * nu = mu * t mu");
  aluthge_cmd->add_option("file", input, "Measure JSON, or - for stdin")->required();

  auto* convolve_cmd = app.add_subcommand("convolve", "Multiplicative convolution of two measures");
  convolve_cmd->add_option("first", input, "Measure JSON")->required();
  convolve_cmd->add_option("second", input2, "Measure JSON")->required();

  auto* shift_cmd = app.add_subcommand("shift", "Shift weights and moments, with the Aluthge transform");
  shift_cmd->add_option("file", input, "Measure JSON, or - for stdin")->required();
  shift_cmd->add_option("--terms", terms, "Number of terms")->check(CLI::Range(1, 100000));

  auto* rec_cmd = app.add_subcommand("recurrence", "Minimal linear recurrence of the exact moments");
  rec_cmd->add_option("file", input, "Measure JSON, or - for stdin")->required();
  rec_cmd->add_option("--max-order", max_order, "Largest order tried")->check(CLI::Range(1, 64));

  auto* gen_cmd = app.add_subcommand("gen", "Random instance");
  GeneratorSpec spec;
  std::string mode = "with-root", style = "random", scalars = "rational", six = "fourth", breakage = "weight";
  gen_cmd->add_option("--p", spec.p, "Number of atoms")->required();
  gen_cmd->add_option("--mode", mode, "with-root, with-aluthge-root, arbitrary, perturbed, crossed-six")
      ->check(CLI::IsMember({"with-root", "with-aluthge-root", "arbitrary", "perturbed", "crossed-six"}));
  gen_cmd->add_option("--style", style, "Positions: geometric or random")->check(CLI::IsMember({"geometric", "random"}));
  gen_cmd->add_option("--scalars", scalars, "Weights: rational or real")->check(CLI::IsMember({"rational", "real"}));
  gen_cmd->add_option("--six-case", six, "Six-atom shape: fourth or third")->check(CLI::IsMember({"fourth", "third"}));
  gen_cmd->add_option("--break", breakage, "Perturbation: weight or support")->check(CLI::IsMember({"weight", "support"}));
  gen_cmd->add_option("--atom", spec.broken_atom, "1-based atom to perturb (0 = random)");

  auto* self_cmd = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    NumericConfig cfg = g.config();

    if (*analyze_cmd) {
      auto mu = parse_measure(read_input(input), cfg);
      auto report = analyze(mu, {cfg, {}, shift_terms});
      if (g.json) {
        Json j = report_to_json(report);
        if (g.diagram) j["diagram"] = report.diagram;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << report_text(report, g.diagram);
      }
      return kOk;
    }
    if (*sqrt_cmd) {
      auto mu = parse_measure(read_input(input), cfg);
      auto v = std::visit([&](const auto& m) { return sqrt_of(m, cfg); }, mu);
      return print_verdict(v, g, mu);
    }
    if (*aluthge_cmd) {
      auto mu = parse_measure(read_input(input), cfg);
      auto v = std::visit([&](const auto& m) { return aluthge_subnormal(m, cfg); }, mu);
      return print_verdict(v, g, mu);
    }
    if (*convolve_cmd) {
      auto a = parse_measure(read_input(input), cfg);
      auto b = parse_measure(read_input(input2), cfg);
      bool real = a.index() == 1 || b.index() == 1;
      a = to_common(a, real, cfg.precision_bits);
      b = to_common(b, real, cfg.precision_bits);
      AnyMeasure c = real ? AnyMeasure(convolve(std::get<1>(a), std::get<1>(b)))
                          : AnyMeasure(convolve(std::get<0>(a), std::get<0>(b)));
      Json j = measure_to_json(c);
      if (g.json) j["schema"] = kSchema;
      std::cout << j.dump(2) << "\n";
      return kOk;
    }
    if (*shift_cmd) {
      auto mu = parse_measure(read_input(input), cfg);
      ShiftTables t = std::visit(
          [&](const auto& m) {
            unsigned bits = cfg.precision_bits;
            ShiftTables s;
            s.alpha = weights_from_measure(m, terms + 1, bits);
            s.alpha_tilde = aluthge_weights(s.alpha);
            s.gamma = berger_moments(m, terms + 1, bits);
            s.gamma_tilde = moments_from_weights(s.alpha_tilde, bits);
            s.alpha.pop_back();
            return s;
          },
          mu);
      if (g.json) {
        Json j = shift_to_json(t);
        j["schema"] = kSchema;
        std::cout << j.dump(2) << "\n";
      } else {
        AnalysisReport r;
        r.shift = t;
        std::string text = report_text(r, false);
        std::cout << text.substr(text.find("\n  n ") + 1);
      }
      return kOk;
    }
    if (*rec_cmd) {
      auto mu = parse_measure(read_input(input), cfg);
      if (mu.index() != 0) throw std::invalid_argument("recurrence detection needs a rational-mode measure");
      auto gamma = exact_moments(std::get<0>(mu), 2 * max_order + 1);
      auto rec = minimal_recurrence(gamma, max_order);
      if (g.json) {
        Json j;
        j["schema"] = kSchema;
        if (rec) {
          j["order"] = rec->order;
          Json c = Json::array();
          for (const auto& a : rec->coeffs) c.push_back(a.get_str());
          j["coefficients"] = c;
        } else {
          j["order"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
      } else if (rec) {
        std::cout << "order " << rec->order << "\ngamma_{n+" << rec->order << "} =";
        for (std::size_t k = rec->order; k-- > 0;) {
          std::cout << (k + 1 == rec->order ? " " : " + ") << "(" << rec->coeffs[k].get_str() << ") gamma_{n";
          if (k) std::cout << "+" << k;
          std::cout << "}";
        }
        std::cout << "\n";
      } else {
        std::cout << "no recurrence of order <= " << max_order << "\n";
      }
      return rec ? kOk : kUndetermined;
    }
    if (*gen_cmd) {
      spec.mode = gen_mode_from(mode);
      spec.style = style == "geometric" ? PositionStyle::Geometric : PositionStyle::Random;
      spec.scalars = scalars == "real" ? ScalarMode::Real : ScalarMode::Exact;
      spec.six_case = six == "third" ? SixCase::SquaresThroughThird : SixCase::SquaresThroughFourth;
      spec.breakage = breakage == "support" ? Breakage::Support : Breakage::Weight;
      spec.seed = g.seed;
      spec.precision_bits = cfg.precision_bits;
      auto inst = generate(spec);
      Json j = measure_to_json(inst.measure);
      j["schema"] = kSchema;
      j["description"] = inst.description;
      if (inst.root) j["root"] = measure_to_json(*inst.root);
      std::cout << j.dump(2) << "\n";
      return kOk;
    }
    if (*self_cmd) {
      testing::AcceptanceOptions opt;
      opt.cfg = cfg;
      bool ok = true;
      testing::run_acceptance(opt, [&](const testing::CriterionResult& r) {
        std::cout << testing::format_result(r) << std::endl;
        ok = ok && r.passed;
      });
      return ok ? kOk : kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
