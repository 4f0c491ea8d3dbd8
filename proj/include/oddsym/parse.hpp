#pragma once

// Expression grammar, canonical printing and JSON serialization.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := integer | name | '(' expr ')' | 'D' '(' expr ',' name ')'
//   name    := x<i> | th<i> | xi<i> | eps<i> | pe<i> | po<i> | y<i> | hbar | I
//
// D(f, v) is the derivative by v (the left derivative for odd v). Division is
// by even elements with invertible body.

#include <json.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oddsym/formsbridge.hpp"

namespace oddsym::text {

using Symbol = std::variant<Var, OddGenerator>;

/// x1, th2, hbar, ... -> the symbol; nullopt for anything else.
inline std::optional<Symbol> symbol_from_name(const std::string& name) {
  if (name == "hbar") return Var::hbar();
  struct Prefix {
    const char* text;
    bool odd;
    int kind;
  };
  static const Prefix prefixes[] = {
      {"xi", true, static_cast<int>(OddKind::xi)},   {"th", true, static_cast<int>(OddKind::theta)},
      {"eps", true, static_cast<int>(OddKind::eps)}, {"po", true, static_cast<int>(OddKind::po)},
      {"pe", false, static_cast<int>(VarKind::pe)},  {"x", false, static_cast<int>(VarKind::x)},
      {"y", false, static_cast<int>(VarKind::param)},
  };
  for (const auto& p : prefixes) {
    std::string pre = p.text;
    if (name.size() <= pre.size() || name.compare(0, pre.size(), pre) != 0) continue;
    std::string digits = name.substr(pre.size());
    if (digits.size() > 3 || digits[0] == '0') return std::nullopt;
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    int index = std::stoi(digits);
    if (p.odd) {
      OddGenerator g{static_cast<OddKind>(p.kind), index};
      if (!g.valid()) return std::nullopt;
      return g;
    }
    Var v{static_cast<VarKind>(p.kind), index};
    if (!v.valid()) return std::nullopt;
    return v;
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string source, std::string chart = {}) : src_(std::move(source)), chart_(std::move(chart)) {}

  SuperFunction parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    SuperFunction f = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return f.with_chart(chart_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < pos && k < src_.size(); ++k) {
      if (src_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(what, line, col);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (!at_end() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      skip_space();
      fail(std::string("expected '") + c + "'");
    }
  }

  SuperFunction expr() {
    SuperFunction f = term();
    for (;;) {
      if (accept('+')) f += term();
      else if (accept('-')) f -= term();
      else return f;
    }
  }

  SuperFunction term() {
    SuperFunction f = unary();
    for (;;) {
      if (accept('*')) {
        f = f * unary();
      } else if (accept('/')) {
        skip_space();
        std::size_t at = pos_;
        SuperFunction d = unary();
        if (!d.is_even()) fail_at("division by an element that is not even", at);
        if (d.body().is_zero()) fail_at("division by an element with zero body", at);
        f = f * invert(d);
      } else {
        return f;
      }
    }
  }

  SuperFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SuperFunction power() {
    SuperFunction base = primary();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip_space();
    std::size_t at = pos_;
    std::string digits = read_digits();
    if (digits.empty()) fail("expected an integer exponent");
    if (digits.size() > 3 || std::stoi(digits) > 255) fail_at("exponent too large", at);
    unsigned k = static_cast<unsigned>(std::stoi(digits));
    if (negative) {
      if (!base.is_even() || base.body().is_zero()) fail_at("negative power of a non-invertible element", at);
      base = invert(base);
    }
    return base.pow(k);
  }

  std::string read_digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) d += src_[pos_++];
    return d;
  }

  std::string read_name() {
    std::string n;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) n += src_[pos_++];
    return n;
  }

  SuperFunction primary() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      SuperFunction f = expr();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string d = read_digits();
      return SuperFunction(Scalar(GaussianRational(mpq_class(mpz_class(d)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      std::string name = read_name();
      if (name == "I") return SuperFunction(Scalar::i());
      if (name == "D") return derivative();
      auto sym = symbol_from_name(name);
      if (!sym) fail_at("unknown identifier '" + name + "'", at);
      if (auto v = std::get_if<Var>(&*sym)) return SuperFunction::variable(*v);
      return SuperFunction::generator(std::get<OddGenerator>(*sym));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  SuperFunction derivative() {
    expect('(');
    SuperFunction f = expr();
    expect(',');
    skip_space();
    std::size_t at = pos_;
    std::string name = read_name();
    auto sym = symbol_from_name(name);
    if (!sym) fail_at("D expects a variable name, got '" + name + "'", at);
    expect(')');
    if (auto v = std::get_if<Var>(&*sym)) return partial_even(f, *v);
    return partial_odd(f, std::get<OddGenerator>(*sym));
  }

  std::string src_;
  std::string chart_;
  std::size_t pos_ = 0;
};

inline SuperFunction parse_expression(const std::string& source, const std::string& chart = {}) {
  return Parser(source, chart).parse();
}

/// Canonical text; parse_expression(print(f)) == f.
inline std::string print(const SuperFunction& f) { return f.to_string(); }

inline SuperFunction parse_even(const std::string& source, const std::string& what, const std::string& chart = {}) {
  SuperFunction f = parse_expression(source, chart);
  if (!f.is_even()) throw ParityError(what + " must be even: " + source);
  return f;
}

inline DifferentialForm parse_form(const std::string& source, int n, const std::string& chart = {}) {
  return {parse_expression(source, chart), n};
}

// JSON -----------------------------------------------------------------------

inline nlohmann::json to_json(const SuperFunction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : mono::generators(m)) gens.push_back(g.name());
    terms.push_back({{"monomial", gens}, {"num", c.num().to_string()}, {"den", c.den().to_string()}});
  }
  return {{"chart", f.chart()}, {"terms", terms}};
}

namespace detail {

inline Polynomial polynomial_from_text(const std::string& s) {
  SuperFunction f = parse_expression(s);
  if (f.odd_support()) throw DomainError("coefficient contains odd generators: " + s);
  Scalar c = f.body();
  if (!c.is_polynomial()) throw DomainError("coefficient is not a polynomial: " + s);
  return c.num();
}

}  // namespace detail

inline SuperFunction function_from_json(const nlohmann::json& j) {
  std::string chart = j.value("chart", std::string());
  SuperFunction f = SuperFunction().with_chart(chart);
  for (const auto& t : j.at("terms")) {
    SuperFunction gens(1);
    for (const auto& g : t.at("monomial")) {
      auto sym = symbol_from_name(g.get<std::string>());
      if (!sym || !std::holds_alternative<OddGenerator>(*sym))
        throw DomainError("monomial entry is not an odd generator: " + g.get<std::string>());
      gens = gens * SuperFunction::generator(std::get<OddGenerator>(*sym));
    }
    Scalar c(detail::polynomial_from_text(t.at("num").get<std::string>()),
             detail::polynomial_from_text(t.value("den", std::string("1"))));
    f += c * gens;
  }
  return f.with_chart(chart);
}

inline nlohmann::json to_json(const DifferentialForm& w) {
  nlohmann::json j = to_json(w.function());
  j["n"] = w.dimension();
  return j;
}

inline DifferentialForm form_from_json(const nlohmann::json& j) {
  return {function_from_json(j), j.at("n").get<int>()};
}

inline nlohmann::json to_json(const Transition& t) {
  nlohmann::json imgs = nlohmann::json::array();
  for (const auto& f : t.images) imgs.push_back(print(f));
  return {{"source", t.source}, {"target", t.target}, {"n", t.n}, {"images", imgs}};
}

inline Transition transition_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  std::vector<SuperFunction> imgs;
  for (const auto& e : j.at("images")) imgs.push_back(parse_expression(e.get<std::string>()));
  return Transition(j.value("source", std::string()), j.value("target", std::string()), n, std::move(imgs));
}

/// A transition either as a JSON array of the 2n images (x1..xn, th1..thn), or
/// as "x1 -> 2*x1, th1 -> 1/2*th1" where unlisted coordinates stay fixed.
inline Transition parse_transition(const std::string& source, int n, const std::string& src = {},
                                   const std::string& tgt = {}) {
  std::size_t first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '[') {
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
      throw SyntaxError(std::string("invalid JSON: ") + e.what(), 1, static_cast<int>(e.byte));
    }
    std::vector<SuperFunction> imgs;
    for (const auto& e : arr) imgs.push_back(parse_expression(e.get<std::string>()));
    return Transition(src, tgt, n, std::move(imgs));
  }
  std::vector<SuperFunction> imgs;
  for (int i = 1; i <= n; ++i) imgs.push_back(SuperFunction::x(i));
  for (int i = 1; i <= n; ++i) imgs.push_back(SuperFunction::theta(i));
  // split at top-level commas (D(f, v) contains one)
  std::vector<std::size_t> cuts;
  int depth = 0;
  for (std::size_t k = 0; k < source.size(); ++k) {
    if (source[k] == '(') ++depth;
    else if (source[k] == ')') --depth;
    else if (source[k] == ',' && depth == 0) cuts.push_back(k);
  }
  cuts.push_back(source.size());
  std::size_t start = 0;
  for (std::size_t end : cuts) {
    std::string entry = source.substr(start, end - start);
    std::size_t arrow = entry.find("->");
    if (arrow == std::string::npos) throw SyntaxError("expected 'name -> expression'", 1, static_cast<int>(start) + 1);
    std::string name = entry.substr(0, arrow);
    name.erase(0, name.find_first_not_of(" \t\r\n"));
    name.erase(name.find_last_not_of(" \t\r\n") + 1);
    auto sym = symbol_from_name(name);
    int slot = -1;
    if (sym) {
      if (auto v = std::get_if<Var>(&*sym); v && v->kind == VarKind::x && v->index <= n) slot = v->index - 1;
      if (auto g = std::get_if<OddGenerator>(&*sym); g && g->kind == OddKind::theta && g->index <= n)
        slot = n + g->index - 1;
    }
    if (slot < 0) throw SyntaxError("not a coordinate of R^{n|n}: '" + name + "'", 1, static_cast<int>(start) + 1);
    std::string body = entry.substr(arrow + 2);
    try {
      imgs[slot] = parse_expression(body);
    } catch (const SyntaxError& e) {
      std::string what = e.what();
      what = what.substr(0, what.rfind(" at line"));
      throw SyntaxError("in image of " + name + ": " + what, e.line(),
                        e.column() + static_cast<int>(start + arrow + 2));
    }
    start = end + 1;
  }
  return Transition(src, tgt, n, std::move(imgs));
}

}  // namespace oddsym::text
