// Command-line front end. Every subcommand reads expressions in the textual
// grammar (or the JSON schema when the argument starts with '{'), calls one
// library operation and prints the result as text or JSON.
//
// Exit status: 0 success, 1 a check failed, 2 usage, parse or domain error.

#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "oddsym/oddsym.hpp"

using namespace oddsym;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::optional<int> n;
  std::string chart;
  std::string rho;
  std::string format = "text";
  std::uint64_t seed = 7;
  int count = 50;
};

bool is_json(const std::string& s) {
  auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && s[p] == '{';
}

SuperFunction read_function(const std::string& s, const Globals& g) {
  if (is_json(s)) return text::function_from_json(json::parse(s));
  return text::parse_expression(s, g.chart);
}

SuperFunction read_even(const std::string& s, const std::string& what, const Globals& g) {
  SuperFunction f = read_function(s, g);
  if (!f.is_even()) throw ParityError(what + " must be even");
  return f;
}

int require_n(const Globals& g, const char* what) {
  if (!g.n) throw DomainError(std::string(what) + " needs --n");
  if (*g.n < 1 || *g.n > kMaxIndex) throw DomainError("--n out of range");
  return *g.n;
}

Transition read_transition(const std::string& s, int n, const Globals& g) {
  if (is_json(s)) return text::transition_from_json(json::parse(s));
  return text::parse_transition(s, n, g.chart, g.chart);
}

DifferentialForm read_form(const std::string& s, int n, const Globals& g) {
  if (is_json(s)) return text::form_from_json(json::parse(s));
  return text::parse_form(s, n, g.chart);
}

/// Comma-separated components at top level, e.g. "eps1, 2*x1*eps2".
std::vector<SuperFunction> read_list(const std::string& s, const Globals& g) {
  std::vector<SuperFunction> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.push_back(read_function(s.substr(start, i - start), g));
      start = i + 1;
    }
  }
  return out;
}

class Output {
 public:
  explicit Output(const Globals& g) : json_(g.format == "json") {}

  void function(const std::string& key, const SuperFunction& f) {
    if (json_)
      doc_[key] = text::to_json(f);
    else
      std::cout << (key == "result" ? "" : key + ": ") << text::print(f) << "\n";
  }
  void form(const std::string& key, const DifferentialForm& w) {
    if (json_)
      doc_[key] = text::to_json(w);
    else
      std::cout << (key == "result" ? "" : key + ": ") << text::print(w.function()) << "\n";
  }
  void flag(const std::string& key, bool v) {
    if (json_)
      doc_[key] = v;
    else
      std::cout << key << ": " << (v ? "yes" : "no") << "\n";
  }
  json& raw() { return doc_; }
  bool is_json() const { return json_; }
  ~Output() {
    if (json_ && std::uncaught_exceptions() == 0) std::cout << doc_.dump(2) << "\n";
  }

 private:
  bool json_;
  json doc_ = json::object();
};

int run_suite_command(const std::string& name, const std::string& fault, const Globals& g) {
  suite::Options o;
  o.n = g.n.value_or(2);
  o.seed = g.seed;
  o.count = g.count;
  if (fault == "bracket-sign")
    o.fault = suite::Fault::bracket_sign;
  else if (fault == "laplacian-sign")
    o.fault = suite::Fault::laplacian_sign;
  else if (!fault.empty())
    throw DomainError("unknown fault '" + fault + "'");
  auto rep = suite::run_suite(name, o);
  if (g.format == "json") {
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"suite", c.suite},
                        {"tag", c.tag},
                        {"statement", c.statement},
                        {"cases", c.cases},
                        {"failures", c.failures},
                        {"counterexample", c.counterexample},
                        {"seconds", c.seconds}});
    std::cout << json{{"suite", name}, {"n", o.n}, {"seed", o.seed}, {"count", o.count}, {"ok", rep.ok()}, {"checks", checks}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& c : rep.checks) {
      std::cout << (c.ok() ? "PASS " : "FAIL ") << c.tag << "  " << c.cases << " cases";
      if (!c.ok()) std::cout << ", " << c.failures << " failed; first: " << c.counterexample;
      std::cout << "\n";
    }
    std::cout << (rep.ok() ? "ok" : "FAILED") << " (" << rep.checks.size() << " checks, n = " << o.n
              << ", seed = " << o.seed << ")\n";
  }
  return rep.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus on odd symplectic R^{n|n}"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--n", g.n, "dimension n of R^{n|n} (1..12)");
  app.add_option("--chart", g.chart, "chart label attached to parsed inputs");
  app.add_option("--rho", g.rho, "volume form coefficient (even, invertible)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "random seed for suite");
  app.add_option("--count", g.count, "samples per check for suite")->check(CLI::PositiveNumber);

  int status = kOk;
  std::function<void()> action;

  std::string a, b;
  auto* bracket = app.add_subcommand("bracket", "odd bracket {F, G}");
  bracket->add_option("F", a)->required();
  bracket->add_option("G", b)->required();
  bracket->callback([&] {
    action = [&] {
      Output out(g);
      out.function("result", odd_bracket(read_function(a, g), read_function(b, g)));
    };
  });

  bool canonical = false;
  auto* laplace = app.add_subcommand("laplace", "Delta_rho F, or the canonical Laplacian of a semidensity");
  laplace->add_option("F", a)->required();
  laplace->add_flag("--canonical", canonical, "treat F as a semidensity coefficient");
  laplace->callback([&] {
    action = [&] {
      SuperFunction f = read_function(a, g);
      Output out(g);
      if (canonical) {
        if (!g.rho.empty()) throw DomainError("--canonical takes no --rho");
        out.function("result", canonical_delta(Density::semidensity(f)).coefficient);
      } else {
        VolumeForm rho = g.rho.empty() ? VolumeForm() : VolumeForm(read_even(g.rho, "--rho", g));
        out.function("result", delta_rho(rho, f));
      }
    };
  });

  std::string transition;
  auto* ber = app.add_subcommand("berezinian", "Berezinian of a Darboux transition");
  ber->add_option("TRANSITION", transition, "\"x1 -> expr, th1 -> expr\" or a JSON list of images")->required();
  ber->callback([&] {
    action = [&] {
      Transition t = read_transition(transition, require_n(g, "berezinian"), g);
      Output out(g);
      out.function("result", berezinian(t));
    };
  });

  std::string weight = "1/2";
  auto* transform = app.add_subcommand("transform", "transform a density coefficient along a transition");
  transform->add_option("F", a)->required();
  transform->add_option("--transition", transition)->required();
  transform->add_option("--weight", weight, "density weight, e.g. 1/2 or 1");
  transform->callback([&] {
    action = [&] {
      Transition t = read_transition(transition, require_n(g, "transform"), g);
      mpq_class w;
      if (w.set_str(weight, 10) != 0) throw DomainError("--weight must be a rational number");
      w.canonicalize();
      Output out(g);
      out.function("result", transform_density(Density(read_function(a, g), w, g.chart), t).coefficient);
    };
  });

  auto* check_transition = app.add_subcommand("check-transition", "symplecticity and the BV identity");
  check_transition->add_option("TRANSITION", transition)->required();
  check_transition->callback([&] {
    action = [&] {
      Transition t = read_transition(transition, require_n(g, "check-transition"), g);
      auto sr = is_symplectomorphism(t);
      std::optional<SuperFunction> bv;
      try {
        bv = bv_identity(t);
      } catch (const NoExactSquareRoot&) {
      }
      Output out(g);
      out.flag("symplectic", sr.ok());
      if (out.is_json())
        out.raw()["failures"] = sr.failures;
      else
        for (const auto& f : sr.failures) std::cout << "  " << f << "\n";
      out.function("berezinian", berezinian(t));
      if (bv)
        out.function("delta_sqrt_berezinian", *bv);
      else
        out.flag("exact_square_root", false);
      status = sr.ok() && bv && bv->is_zero() ? kOk : kCheckFailed;
    };
  });

  bool to_form = false;
  auto* fourier = app.add_subcommand("fourier", "differential form <-> semidensity");
  fourier->add_option("INPUT", a, "a form in xi (default) or, with --to-form, a semidensity in th")->required();
  fourier->add_flag("--to-form", to_form, "map a semidensity back to a form");
  fourier->callback([&] {
    action = [&] {
      int n = require_n(g, "fourier");
      Output out(g);
      if (to_form)
        out.form("result", semidensity_to_form(Density::semidensity(read_function(a, g)), n));
      else
        out.function("result", form_to_semidensity(read_form(a, n, g)).coefficient);
    };
  });

  std::string alpha;
  auto* restrict = app.add_subcommand("restrict", "restrict a semidensity to the graph of a closed odd one-form");
  restrict->add_option("S", a)->required();
  restrict->add_option("--alpha", alpha, "components alpha_1, ..., alpha_n (default 0)");
  restrict->callback([&] {
    action = [&] {
      int n = require_n(g, "restrict");
      std::vector<SuperFunction> al = alpha.empty() ? std::vector<SuperFunction>(n) : read_list(alpha, g);
      Output out(g);
      out.function("result", restrict_to_lagrangian(Density::semidensity(read_function(a, g)), al, n).sigma);
    };
  });

  bool quantum = false, classical = false, semidensity = false;
  std::string exact;
  auto* master = app.add_subcommand("check-master", "quantum, classical or semidensity master equation");
  master->add_option("S", a)->required();
  auto* qf = master->add_flag("--quantum", quantum, "-4 hbar Delta S + {S, S} = 0");
  auto* cf = master->add_flag("--classical", classical, "{S, S} = 0");
  auto* sf = master->add_flag("--semidensity", semidensity, "Delta s = 0");
  qf->excludes(cf)->excludes(sf);
  cf->excludes(sf);
  master->add_option("--exact", exact, "with --semidensity: check s = Delta r for this r");
  master->callback([&] {
    action = [&] {
      Output out(g);
      if (semidensity) {
        std::optional<SuperFunction> r;
        if (!exact.empty()) r = read_function(exact, g);
        auto rep = semidensity_master_check(Density::semidensity(read_function(a, g)), r);
        out.flag("closed", rep.closed);
        if (rep.exact) out.flag("exact", *rep.exact);
        status = rep.closed && rep.exact.value_or(true) ? kOk : kCheckFailed;
      } else if (classical) {
        auto rep = classical_master_check(read_function(a, g));
        out.function("self_bracket", rep.self_bracket);
        out.flag("hbar_limit_agrees", rep.hbar_limit_agrees);
        status = rep.holds() ? kOk : kCheckFailed;
      } else {
        if (!quantum && !exact.empty()) throw DomainError("--exact needs --semidensity");
        SuperFunction res = quantum_master_residual(read_function(a, g));
        out.function("residual", res);
        auto parts = hbar_expansion(res);
        for (std::size_t k = 0; k < parts.size(); ++k) out.function("hbar^" + std::to_string(k), parts[k]);
        status = res.is_zero() ? kOk : kCheckFailed;
      }
    };
  });

  std::string suite_name, fault;
  auto* suite_cmd = app.add_subcommand("suite", "run a named identity suite");
  suite_cmd->add_option("NAME", suite_name, "axioms, laplacian, bv, fourier, master or all")->required();
  suite_cmd->add_option("--inject-fault", fault, "bracket-sign or laplacian-sign (self-test of the suite)");
  suite_cmd->callback([&] { action = [&] { status = run_suite_command(suite_name, fault, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    action();
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
