#pragma once

// The acceptance suite: twelve end-to-end criteria, each reported as one
// pass/fail line. Criteria 10 and 12 re-examine the witnesses and the
// impossibility verdicts collected by the earlier ones.

#include "alsq/analyze.hpp"
#include "alsq/closed_form.hpp"
#include "alsq/generate.hpp"
#include "alsq/recurrence.hpp"
#include "alsq/shift.hpp"
#include "alsq/solver.hpp"
#include "alsq/testing/fixtures.hpp"
#include "alsq/testing/oracle.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace alsq::testing {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  NumericConfig cfg;
  std::uint64_t seed = 20240601;
  std::size_t audit_size = 200;
};

enum class Question { Sqrt, Aluthge };

struct AuditItem {
  AnyMeasure measure;
  Question question;
  std::string origin;
};

class Acceptance {
 public:
  explicit Acceptance(AcceptanceOptions opt) : opt_(std::move(opt)) {}

  std::vector<CriterionResult> run(const std::function<void(const CriterionResult&)>& each = {}) {
    using Fn = bool (Acceptance::*)(std::ostringstream&);
    const std::pair<const char*, Fn> table[] = {
        {"five-atom example on powers of two", &Acceptance::powers_of_two},
        {"six-atom example with maximal product set", &Acceptance::six_atom},
        {"cardinality bounds on solvable instances", &Acceptance::cardinality_bounds},
        {"geometric support iff 2p-1 products", &Acceptance::geometric_equivalence},
        {"three-atom dichotomy", &Acceptance::three_atoms},
        {"four atoms never qualify", &Acceptance::four_atoms},
        {"five-atom characterization", &Acceptance::five_atoms},
        {"six-atom trichotomy", &Acceptance::six_atoms},
        {"Aluthge moment identity", &Acceptance::moment_identity},
        {"Hankel positivity of Aluthge moments", &Acceptance::hankel_cross_check},
        {"minimal recurrence of atomic moments", &Acceptance::recurrence},
        {"impossibility audit by brute force", &Acceptance::audit},
    };
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& [title, fn] : table) {
      CriterionResult r;
      r.id = ++id;
      r.title = title;
      std::ostringstream detail;
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.passed = (this->*fn)(detail);
      } catch (const std::exception& e) {
        r.passed = false;
        detail << " exception: " << e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      r.detail = detail.str();
      if (each) each(r);
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  AcceptanceOptions opt_;
  std::vector<AnyMeasure> witnesses_;  // Aluthge witnesses from criteria 5, 7, 8
  std::vector<AuditItem> impossible_;

  std::uint64_t seed(std::uint64_t criterion, std::uint64_t k) const {
    return opt_.seed ^ (criterion * 0x9e3779b97f4a7c15ULL) ^ (k * 0xbf58476d1ce4e5b9ULL);
  }

  static double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  void note_impossible(const AnyMeasure& mu, Question q, const Verdict& v, const std::string& origin) {
    if (v.outcome == Outcome::Impossible) impossible_.push_back({mu, q, origin});
  }

  template <class F>
  static bool each_failure(std::ostringstream& out, std::size_t& failures, bool ok, F&& describe) {
    if (!ok) {
      if (failures < 3) out << " [" << describe() << "]";
      ++failures;
    }
    return ok;
  }

  bool powers_of_two(std::ostringstream& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = analyze(powers_of_two_example(), {opt_.cfg, {}, 0});
    double secs = since(t0);
    bool geometric = r.geometric && r.geometric->a == Position(1) && r.geometric->r == Position(2);
    bool root_ok = false;
    if (r.sqrt_verdict.witness) {
      unsigned bits = 128;
      auto err = max_relative_error(any_to_real(*r.sqrt_verdict.witness, bits), to_real(powers_of_two_root(), bits), bits);
      root_ok = err && err->to_double() < 1e-25;
    }
    out << "card " << r.card.card << ", geometric " << (geometric ? "(1, 2)" : "no") << ", aluthge "
        << to_string(r.aluthge_verdict.outcome) << ", sqrt " << to_string(r.sqrt_verdict.outcome)
        << (root_ok ? " (matches)" : " (mismatch)") << ", " << secs << " s";
    return r.card.card == 9 && geometric && r.aluthge_verdict.outcome == Outcome::Witness &&
           r.sqrt_verdict.outcome == Outcome::Witness && root_ok && secs < 1.0;
  }

  bool six_atom(std::ostringstream& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = analyze(six_atom_example(), {opt_.cfg, {}, 0});
    double secs = since(t0);
    bool exact_root = r.sqrt_verdict.exact_witness() &&
                      same_measure(std::get<AtomicMeasure<Surd>>(*r.sqrt_verdict.witness), six_atom_root(), opt_.cfg);
    bool case_one = r.small && r.small->which == SmallCase::SixSquaresThroughFourth &&
                    r.small->verdict.outcome == Outcome::Witness;
    out << "card " << r.card.card << ", exact root " << (exact_root ? "yes" : "no") << ", closed form "
        << (r.small ? to_string(r.small->which) : "none") << ", agreement " << (r.agreement ? "yes" : "no") << ", "
        << secs << " s";
    return r.card.card == 15 && exact_root && case_one && r.agreement && secs < 1.0;
  }

  bool cardinality_bounds(std::ostringstream& out) {
    std::size_t solvable = 0, violations = 0, instances = 0;
    bool lower_hit = false, upper_hit = false;
    auto check = [&](const AnyMeasure& mu) {
      ++instances;
      std::size_t p = measure_size(mu);
      Verdict a = std::visit([&](const auto& m) { return aluthge_subnormal(m, opt_.cfg); }, mu);
      Verdict s = std::visit([&](const auto& m) { return sqrt_of(m, opt_.cfg); }, mu);
      note_impossible(mu, Question::Aluthge, a, "cardinality");
      note_impossible(mu, Question::Sqrt, s, "cardinality");
      if (a.outcome != Outcome::Witness && s.outcome != Outcome::Witness) return;
      ++solvable;
      auto support = std::visit([](const auto& m) { return m.support(); }, mu);
      auto c = cardinality_check(pair_diagram(support));
      std::size_t upper = ((p - 1) * (p - 1) + 6) / 2;
      if (c.card < 2 * p - 1 || c.card > upper) ++violations;
      lower_hit = lower_hit || c.card == 2 * p - 1;
      upper_hit = upper_hit || c.card == upper;
    };
    check(powers_of_two_example());
    check(six_atom_example());
    const GenMode modes[] = {GenMode::WithRoot, GenMode::WithAluthgeRoot, GenMode::Arbitrary, GenMode::Perturbed};
    for (std::size_t k = 0; instances < 2000; ++k) {
      GeneratorSpec g;
      g.seed = seed(3, k);
      g.p = 4 + k % 3;
      g.mode = modes[(k / 3) % 4];
      g.scalars = (k / 12) % 2 ? ScalarMode::Real : ScalarMode::Exact;
      g.style = (k / 24) % 2 ? PositionStyle::Geometric : PositionStyle::Random;
      g.six_case = (k / 48) % 2 ? SixCase::SquaresThroughThird : SixCase::SquaresThroughFourth;
      if (g.p == 4 && (g.mode == GenMode::WithRoot || g.mode == GenMode::WithAluthgeRoot || g.mode == GenMode::Perturbed))
        g.mode = GenMode::Arbitrary;
      if (g.mode == GenMode::WithRoot && g.p == 6 && g.style == PositionStyle::Geometric) g.style = PositionStyle::Random;
      check(generate(g).measure);
    }
    out << instances << " instances, " << solvable << " solvable, " << violations << " violations, lower bound "
        << (lower_hit ? "attained" : "not attained") << ", upper bound " << (upper_hit ? "attained" : "not attained");
    return violations == 0 && lower_hit && upper_hit && solvable > 0;
  }

  bool geometric_equivalence(std::ostringstream& out) {
    alsq::detail::Draw d(seed(4, 0));
    std::size_t failures = 0, geometric_count = 0;
    for (std::size_t k = 0; k < 1000; ++k) {
      std::size_t p = static_cast<std::size_t>(d.integer(3, 9));
      auto xs = alsq::detail::geometric(d.base(), d.ratio(), p);
      if (k % 2 == 1) {
        // move one atom off the progression, keeping the order
        std::size_t j = static_cast<std::size_t>(d.integer(1, static_cast<long>(p) - 1));
        Rational f = Rational(1) + d.delta() / 2;
        xs[j] *= f;
        if (j + 1 < p && !(xs[j] < xs[j + 1])) xs[j] = (xs[j - 1] + xs[j + 1]) / 2;
      }
      std::vector<Position> support;
      for (const auto& x : xs) support.emplace_back(x);
      auto d2 = pair_diagram(support);
      bool geo = geometric_profile(support).has_value();
      geometric_count += geo;
      bool minimal = d2.size() == 2 * p - 1;
      each_failure(out, failures, geo == minimal, [&] { return "p=" + std::to_string(p); });
    }
    out << "1000 supports (" << geometric_count << " geometric), " << failures << " exceptions";
    return failures == 0;
  }

  bool three_atoms(std::ostringstream& out) {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t good = 0, bad = 0, failures = 0;
    for (std::size_t k = 0; k < 200; ++k) {
      GeneratorSpec g;
      g.p = 3;
      g.seed = seed(5, k);
      g.mode = GenMode::WithAluthgeRoot;
      auto mu = generate(g).measure;
      auto a = std::visit([&](const auto& m) { return aluthge_subnormal(m, opt_.cfg); }, mu);
      auto s = std::visit([&](const auto& m) { return sqrt_of(m, opt_.cfg); }, mu);
      if (a.outcome == Outcome::Witness) witnesses_.push_back(mu);
      good += each_failure(out, failures, a.outcome == Outcome::Witness && s.outcome == Outcome::Witness,
                           [&] { return "root case " + std::to_string(k) + ": " + a.note; });

      g.mode = GenMode::Perturbed;
      g.breakage = Breakage::Weight;
      g.broken_atom = 3;
      auto nu = generate(g).measure;
      auto a2 = std::visit([&](const auto& m) { return aluthge_subnormal(m, opt_.cfg); }, nu);
      auto s2 = std::visit([&](const auto& m) { return sqrt_of(m, opt_.cfg); }, nu);
      note_impossible(nu, Question::Aluthge, a2, "three-atom");
      note_impossible(nu, Question::Sqrt, s2, "three-atom");
      bad += each_failure(out, failures, a2.outcome == Outcome::Impossible && s2.outcome == Outcome::Impossible,
                          [&] { return "perturbed case " + std::to_string(k); });
    }
    double secs = since(t0);
    out << good << "/200 witnesses, " << bad << "/200 impossible, " << secs << " s";
    return failures == 0 && secs < 5.0;
  }

  bool four_atoms(std::ostringstream& out) {
    std::size_t impossible = 0, undetermined = 0, failures = 0;
    for (std::size_t k = 0; k < 500; ++k) {
      GeneratorSpec g;
      g.p = 4;
      g.seed = seed(6, k);
      g.mode = GenMode::Arbitrary;
      g.style = k % 2 ? PositionStyle::Geometric : PositionStyle::Random;
      auto mu = generate(g).measure;
      auto a = std::visit([&](const auto& m) { return aluthge_subnormal(m, opt_.cfg); }, mu);
      note_impossible(mu, Question::Aluthge, a, "four-atom");
      undetermined += a.outcome == Outcome::Undetermined;
      impossible += each_failure(out, failures, a.outcome == Outcome::Impossible,
                                 [&] { return std::string(to_string(a.outcome)) + " at " + std::to_string(k); });
    }
    out << impossible << "/500 impossible, " << undetermined << " undetermined";
    return failures == 0 && undetermined == 0;
  }

  /// Closed form, generic Aluthge solver and square-root search agree.
  bool agree(const AnyMeasure& mu, Outcome want, std::ostringstream& out, std::size_t& failures,
             const std::string& label, bool exact_witness) {
    auto a = std::visit([&](const auto& m) { return aluthge_subnormal(m, opt_.cfg); }, mu);
    auto s = std::visit([&](const auto& m) { return sqrt_of(m, opt_.cfg); }, mu);
    auto c = std::visit([&](const auto& m) { return classify_small(m, opt_.cfg); }, mu);
    note_impossible(mu, Question::Aluthge, a, label);
    note_impossible(mu, Question::Sqrt, s, label);
    if (a.outcome == Outcome::Witness) witnesses_.push_back(mu);
    bool witness_ok = true;
    if (exact_witness && want == Outcome::Witness) {
      const auto& m = std::get<AtomicMeasure<Surd>>(mu);
      witness_ok = c.verdict.exact_witness() && c.verdict.witness && measure_size(*c.verdict.witness) == 3;
      if (witness_ok) {
        const auto& rho = std::get<AtomicMeasure<Surd>>(*c.verdict.witness);
        witness_ok = same_measure(convolve(rho, rho), m, opt_.cfg);
      }
    }
    bool ok = a.outcome == want && s.outcome == want && c.verdict.outcome == want && witness_ok;
    return each_failure(out, failures, ok, [&] {
      return label + ": aluthge " + to_string(a.outcome) + ", sqrt " + to_string(s.outcome) + ", closed " +
             to_string(c.verdict.outcome);
    });
  }

  bool five_atoms(std::ostringstream& out) {
    std::size_t failures = 0, witness = 0, impossible = 0;
    for (std::size_t k = 0; k < 200; ++k) {
      GeneratorSpec g;
      g.p = 5;
      g.seed = seed(7, k);
      g.mode = GenMode::WithAluthgeRoot;
      witness += agree(generate(g).measure, Outcome::Witness, out, failures, "closed form " + std::to_string(k), false);
      g.mode = GenMode::Perturbed;
      switch (k % 3) {
        case 0: g.breakage = Breakage::Support; g.broken_atom = 3; break;
        case 1: g.breakage = Breakage::Weight; g.broken_atom = 4; break;
        default: g.breakage = Breakage::Weight; g.broken_atom = 3; break;
      }
      impossible += agree(generate(g).measure, Outcome::Impossible, out, failures, "broken " + std::to_string(k), false);
    }
    out << witness << "/200 witnesses, " << impossible << "/200 impossible, " << failures << " disagreements";
    return failures == 0;
  }

  bool six_atoms(std::ostringstream& out) {
    std::size_t failures = 0, case1 = 0, case2 = 0, crossed = 0;
    for (std::size_t k = 0; k < 100; ++k) {
      GeneratorSpec g;
      g.p = 6;
      g.seed = seed(8, k);
      g.mode = GenMode::WithAluthgeRoot;
      g.six_case = SixCase::SquaresThroughFourth;
      case1 += agree(generate(g).measure, Outcome::Witness, out, failures, "case I " + std::to_string(k), true);
      g.six_case = SixCase::SquaresThroughThird;
      case2 += agree(generate(g).measure, Outcome::Witness, out, failures, "case II " + std::to_string(k), true);
      g.mode = GenMode::CrossedSix;
      crossed += agree(generate(g).measure, Outcome::Impossible, out, failures, "crossed " + std::to_string(k), false);
    }
    out << case1 << "/100 and " << case2 << "/100 witnesses, " << crossed << "/100 crossed impossible";
    return failures == 0;
  }

  bool moment_identity(std::ostringstream& out) {
    unsigned bits = 128;
    Real limit = Real::pow2(-100, bits);
    Real worst(bits);
    for (std::size_t k = 0; k < 100; ++k) {
      GeneratorSpec g;
      g.p = 1 + k % 6;
      g.seed = seed(9, k);
      g.mode = GenMode::Arbitrary;
      auto mu = generate(g).measure;
      auto gamma = std::visit([&](const auto& m) { return berger_moments(m, 22, bits); }, mu);
      auto tilde = std::visit([&](const auto& m) { return aluthge_moments(m, 21, bits); }, mu);
      for (std::size_t n = 0; n <= 20; ++n)
        worst = max(worst, relative_error(tilde[n] * tilde[n] * gamma[1], gamma[n] * gamma[n + 1]));
    }
    out << "100 measures, n <= 20, worst relative error " << worst.to_string(4);
    return worst < limit;
  }

  bool hankel_cross_check(std::ostringstream& out) {
    std::size_t failures = 0;
    for (const auto& mu : witnesses_) {
      auto tilde = std::visit([&](const auto& m) { return aluthge_moments(m, 14, opt_.cfg.precision_bits); }, mu);
      for (std::size_t n = 0; n <= 6; ++n) {
        auto h = hankel_psd(tilde, n, opt_.cfg);
        each_failure(out, failures, h.a && h.b, [&] { return "n=" + std::to_string(n); });
      }
    }
    out << witnesses_.size() << " witnesses, " << failures << " non-positive Hankel matrices";
    return failures == 0 && !witnesses_.empty();
  }

  bool recurrence(std::ostringstream& out) {
    std::size_t failures = 0;
    for (std::size_t k = 0; k < 100; ++k) {
      GeneratorSpec g;
      g.p = 1 + k % 6;
      g.seed = seed(11, k);
      g.mode = GenMode::Arbitrary;
      auto inst = generate(g);
      const auto& mu = std::get<AtomicMeasure<Surd>>(inst.measure);
      auto rec = minimal_recurrence(exact_moments(mu, 15), 7);
      std::vector<Rational> roots;
      for (const auto& x : mu.support()) roots.push_back(x.coeff());
      bool ok = rec && rec->order == g.p && rec->characteristic() == monic_from_roots(roots);
      each_failure(out, failures, ok, [&] { return "p=" + std::to_string(g.p); });
    }
    out << "100 measures, " << failures << " mismatches";
    return failures == 0;
  }

  bool audit(std::ostringstream& out) {
    std::size_t n = impossible_.size();
    std::size_t take = std::min(opt_.audit_size, n);
    std::size_t found = 0, sqrt_items = 0;
    for (std::size_t k = 0; k < take; ++k) {
      const auto& item = impossible_[k * n / take];
      std::optional<OracleRoot> root;
      if (item.question == Question::Aluthge) {
        root = std::visit([](const auto& m) { return oracle_aluthge_root(m); }, item.measure);
      } else {
        ++sqrt_items;
        root = std::visit([](const auto& m) { return oracle_sqrt(m); }, item.measure);
      }
      if (root) {
        if (found < 3) out << " [root found for " << item.origin << "]";
        ++found;
      }
    }
    out << take << " of " << n << " impossible verdicts audited (" << sqrt_items << " square-root), " << found
        << " roots found";
    return found == 0 && take == std::min(opt_.audit_size, n) && take > 0;
  }
};

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {},
                                                   const std::function<void(const CriterionResult&)>& each = {}) {
  return Acceptance(opt).run(each);
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << ": " << r.detail
      << " [" << std::fixed << std::setprecision(1) << r.seconds << " s]";
  return out.str();
}

}  // namespace alsq::testing
