#include "icalc/textio.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "icalc/core.hpp"

namespace icalc {

const Configuration* SourceFile::find_config(std::string_view name) const {
  for (const auto& [n, c] : configs)
    if (n == name) return &c;
  return nullptr;
}

namespace {

enum class Tok { ident, nat, punct, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::end, "end of input", line_, col_});
        return out;
      }
      char ch = src_[pos_];
      std::size_t line = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        out.push_back({Tok::ident, std::string(src_.substr(start, pos_ - start)), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
        out.push_back({Tok::nat, std::string(src_.substr(start, pos_ - start)), line, col});
      } else if (ch == '>' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '<') {
        advance();
        advance();
        out.push_back({Tok::punct, "><", line, col});
      } else if (std::string_view("{}/,[];=<>|()").find(ch) != std::string_view::npos) {
        advance();
        out.push_back({Tok::punct, std::string(1, ch), line, col});
      } else if (ch == kMachinePrefix) {
        throw ParseError(line, col, "names starting with '%' are reserved for generated names");
      } else {
        throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char ch = src_[pos_];
      if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, System system)
      : toks_(std::move(toks)), out_{std::move(system), {}} {}

  SourceFile file() {
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == Tok::ident && t.text == "agents") {
        agents();
      } else if (t.kind == Tok::ident && t.text == "rule") {
        rule();
      } else if (t.kind == Tok::ident && t.text == "config") {
        config_decl();
      } else {
        fail(t, "expected 'agents', 'rule' or 'config'");
      }
    }
    return std::move(out_);
  }

  Configuration lone_config() {
    Configuration c = config_body();
    if (is_punct(";")) next();
    if (!at_end()) fail(peek(), "unexpected input after configuration");
    return c;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_punct(std::string_view p) const {
    return peek().kind == Tok::punct && peek().text == p;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg + ", found '" + t.text + "'");
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    next();
  }

  Token ident() {
    if (peek().kind != Tok::ident) fail(peek(), "expected identifier");
    return next();
  }

  void agents() {
    next();
    expect("{");
    for (;;) {
      Token name = ident();
      expect("/");
      if (peek().kind != Tok::nat) fail(peek(), "expected arity");
      int arity = std::stoi(next().text);
      auto [it, inserted] = out_.system.signature.emplace(name.text, arity);
      if (!inserted && it->second != arity)
        throw ParseError(name.line, name.column,
                         "agent '" + name.text + "' redeclared with a different arity");
      if (is_punct(",")) {
        next();
        continue;
      }
      break;
    }
    expect("}");
  }

  std::vector<Term> terms_until(std::string_view close) {
    std::vector<Term> out;
    if (is_punct(close)) return out;
    out.push_back(term());
    while (is_punct(",")) {
      next();
      out.push_back(term());
    }
    return out;
  }

  void rule() {
    next();
    Rule r;
    r.left = ident().text;
    expect("[");
    r.left_args = terms_until("]");
    expect("]");
    expect("><");
    r.right = ident().text;
    expect("[");
    r.right_args = terms_until("]");
    expect("]");
    expect(";");
    out_.system.rules.push_back(std::move(r));
  }

  void config_decl() {
    next();
    Token name = ident();
    expect("=");
    Configuration c = config_body();
    expect(";");
    for (const auto& [n, _] : out_.configs)
      if (n == name.text)
        throw ParseError(name.line, name.column, "configuration '" + name.text + "' redeclared");
    out_.configs.emplace_back(name.text, std::move(c));
  }

  Configuration config_body() {
    Configuration c;
    expect("<");
    c.interface = terms_until("|");
    expect("|");
    if (!is_punct(">")) {
      for (;;) {
        Term l = term();
        expect("=");
        Term r = term();
        c.body.push_back({std::move(l), std::move(r)});
        if (!is_punct(",")) break;
        next();
      }
    }
    expect(">");
    return c;
  }

  Term term() {
    Token id = ident();
    if (is_punct("(")) {
      next();
      std::vector<Term> args = terms_until(")");
      expect(")");
      return Term::make_agent(id.text, std::move(args));
    }
    if (out_.system.signature.count(id.text))
      throw ParseError(id.line, id.column,
                       "agent '" + id.text + "' must be written with parentheses");
    return Term::make_name(id.text);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  SourceFile out_;
};

}  // namespace

SourceFile parse_system(std::string_view text) {
  return Parser(Lexer(text).run(), System{}).file();
}

Configuration parse_config(std::string_view text, const System& s) {
  return Parser(Lexer(text).run(), s).lone_config();
}

// ---------------------------------------------------------------------------

std::string print_term(const Term& t) {
  if (t.is_name()) return t.symbol;
  std::string out = t.symbol + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(t.args[i]);
  }
  return out + ")";
}

std::string print_equation(const Equation& e) {
  return print_term(e.lhs) + " = " + print_term(e.rhs);
}

std::string print_equations(const EquationMultiset& eqs) {
  std::string out = "{";
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (i) out += ", ";
    out += print_equation(eqs[i]);
  }
  return out + "}";
}

std::string print_rule(const Rule& r) {
  auto list = [](const std::vector<Term>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ", ";
      s += print_term(ts[i]);
    }
    return s;
  };
  return r.left + "[" + list(r.left_args) + "] >< " + r.right + "[" + list(r.right_args) + "]";
}

std::string print_config_raw(const Configuration& c) {
  std::string out = "<";
  for (std::size_t i = 0; i < c.interface.size(); ++i) {
    out += i ? ", " : " ";
    out += print_term(c.interface[i]);
  }
  out += c.interface.empty() ? "| " : " | ";
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    if (i) out += ", ";
    out += print_equation(c.body[i]);
  }
  out += c.body.empty() ? ">" : " >";
  return out;
}

std::string print_config(const Configuration& c) {
  Configuration canon = canonicalize(c);
  std::vector<Name> names;
  for (const auto& t : canon.interface) collect_names(t, names);
  for (const auto& e : canon.body) {
    collect_names(e.lhs, names);
    collect_names(e.rhs, names);
  }
  std::set<Name> taken;
  for (const auto& n : names)
    if (!is_machine_name(n)) taken.insert(n);
  std::unordered_map<Name, Name> pretty;
  std::size_t k = 0;
  for (const auto& n : names) {
    if (!is_machine_name(n) || pretty.count(n)) continue;
    Name candidate;
    do {
      candidate = "x" + std::to_string(k++);
    } while (taken.count(candidate));
    pretty.emplace(n, candidate);
  }
  Configuration out;
  for (const auto& t : canon.interface) out.interface.push_back(rename(t, pretty));
  for (const auto& e : canon.body) out.body.push_back(rename(e, pretty));
  return print_config_raw(out);
}

std::string print_system(const System& s,
                         const std::vector<std::pair<std::string, Configuration>>& configs) {
  std::ostringstream os;
  if (!s.signature.empty()) {
    os << "agents { ";
    bool first = true;
    for (const auto& [sym, ar] : s.signature) {
      if (!first) os << ", ";
      first = false;
      os << sym << '/' << ar;
    }
    os << " }\n";
  }
  for (const auto& r : s.rules) os << "rule " << print_rule(r) << ";\n";
  for (const auto& [name, c] : configs) os << "config " << name << " = " << print_config(c) << ";\n";
  return os.str();
}

}  // namespace icalc
