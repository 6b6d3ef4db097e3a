#include <cctype>
#include <sstream>

#include "ootp/logic.hpp"

namespace ootp {

ParseError::ParseError(std::string message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

enum class Tok { Ident, Meta, Number, Not, And, Or, Imp, Iff, LParen, RParen, Comma, Dot, Turnstile, All, Ex, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok k = word == "ALL" ? Tok::All : word == "EX" ? Tok::Ex : Tok::Ident;
      out.push_back({k, std::move(word), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
    } else if (c == '?') {
      ++i;
      if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i])))
        throw ParseError("expected identifier after '?'", i);
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Meta, std::string(s.substr(start + 1, i - start - 1)), start});
    } else if (s.substr(i, 3) == "-->") {
      out.push_back({Tok::Imp, "-->", start});
      i += 3;
    } else if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (s.substr(i, 2) == "|-") {
      out.push_back({Tok::Turnstile, "|-", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '~': k = Tok::Not; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '.': k = Tok::Dot; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, ParseScope* scope, bool global_serials)
      : toks_(tokenize(text)), scope_(scope), global_serials_(global_serials) {}

  Formula formula() { return iff(); }

  std::vector<Formula> formula_list() {
    std::vector<Formula> out;
    if (at(Tok::Turnstile) || at(Tok::End)) return out;
    out.push_back(formula());
    while (at(Tok::Comma)) {
      advance();
      out.push_back(formula());
    }
    return out;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Meta) {
      advance();
      return meta(t.text);
    }
    if (t.kind == Tok::Number) {
      advance();
      return Term::app(t.text);
    }
    if (t.kind != Tok::Ident) fail("expected term");
    advance();
    if (at(Tok::LParen)) return Term::app(t.text, args());
    for (std::size_t i = binders_.size(); i-- > 0;)
      if (binders_[i] == t.text) return Term::bound(binders_.size() - 1 - i);
    if (scope_) {
      auto it = scope_->params.find(t.text);
      if (it != scope_->params.end()) return it->second;
    }
    return Term::app(t.text);
  }

  bool at(Tok k) const { return toks_[pos_].kind == k; }
  const Token& peek() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    advance();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    if (at(Tok::End)) throw ParseError(msg + ", found end of input", peek().pos);
    throw ParseError(msg + ", found '" + peek().text + "'", peek().pos);
  }

 private:
  Formula iff() {
    Formula f = imp();
    while (at(Tok::Iff)) {
      advance();
      f = Formula::iff(f, imp());
    }
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (at(Tok::Imp)) {
      advance();
      return Formula::imp(f, imp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (at(Tok::Or)) {
      advance();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (at(Tok::And)) {
      advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      advance();
      return Formula::neg(unary());
    }
    if (at(Tok::All) || at(Tok::Ex)) {
      const Quantifier q = at(Tok::All) ? Quantifier::All : Quantifier::Ex;
      advance();
      if (!at(Tok::Ident)) fail("expected bound variable");
      std::string var = peek().text;
      advance();
      expect(Tok::Dot, "'.'");
      binders_.push_back(var);
      Formula body = formula();
      binders_.pop_back();
      return Formula::quant(q, std::move(var), std::move(body));
    }
    if (at(Tok::LParen)) {
      advance();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (!at(Tok::Ident)) fail("expected formula");
    std::string name = peek().text;
    advance();
    if (at(Tok::LParen)) return Formula::pred(std::move(name), args());
    return Formula::pred(std::move(name));
  }

  std::vector<Term> args() {
    expect(Tok::LParen, "'('");
    std::vector<Term> out;
    out.push_back(term());
    while (at(Tok::Comma)) {
      advance();
      out.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return out;
  }

  Term meta(const std::string& name) {
    ParseScope& sc = scope_ ? *scope_ : local_;
    auto it = sc.metas.find(name);
    if (it != sc.metas.end()) return it->second;
    const std::size_t serial = global_serials_ ? fresh_serial() : sc.next_serial++;
    Term m = Term::meta(name, serial);
    sc.metas.emplace(name, m);
    return m;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> binders_;
  ParseScope* scope_;
  ParseScope local_;
  bool global_serials_;
};

Sequent parse_sequent_impl(Parser& p) {
  Sequent q;
  std::vector<Formula> first = p.formula_list();
  if (p.at(Tok::Turnstile)) {
    p.advance();
    q.left = std::move(first);
    q.right = p.formula_list();
  } else {
    q.right = std::move(first);
  }
  if (!p.at(Tok::End)) p.fail("expected ',' or end of input");
  return q;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text, nullptr, true);
  Formula f = p.formula();
  if (!p.at(Tok::End)) p.fail("expected end of input");
  return f;
}

Formula parse_formula(std::string_view text, ParseScope& scope) {
  Parser p(text, &scope, false);
  Formula f = p.formula();
  if (!p.at(Tok::End)) p.fail("expected end of input");
  return f;
}

Term parse_term(std::string_view text, ParseScope& scope) {
  Parser p(text, &scope, false);
  Term t = p.term();
  if (!p.at(Tok::End)) p.fail("expected end of input");
  return t;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(text, nullptr, true);
  return parse_sequent_impl(p);
}

Sequent parse_sequent(std::string_view text, ParseScope& scope) {
  Parser p(text, &scope, false);
  return parse_sequent_impl(p);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int level(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Pred: return 6;
    case FormulaKind::Quant: return 0;
    case FormulaKind::Conn:
      switch (f.op()) {
        case Connective::Not: return 5;
        case Connective::And: return 4;
        case Connective::Or: return 3;
        case Connective::Imp: return 2;
        case Connective::Iff: return 1;
      }
  }
  return 6;
}

const char* op_text(Connective op) {
  switch (op) {
    case Connective::Not: return "~";
    case Connective::And: return " & ";
    case Connective::Or: return " | ";
    case Connective::Imp: return " --> ";
    case Connective::Iff: return " <-> ";
  }
  return "?";
}

class Printer {
 public:
  std::string term(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Meta: return "?" + t.name();
      case TermKind::Param: return t.name();
      case TermKind::Bound:
        if (t.index() < names_.size()) return names_[names_.size() - 1 - t.index()];
        return "_b" + std::to_string(t.index());
      case TermKind::App: {
        if (t.args().empty()) return t.name();
        std::string out = t.name() + "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          out += term(t.args()[i]);
        }
        return out + ")";
      }
    }
    return "?";
  }

  // `right_open`: nothing follows this formula within its enclosing parenthesis group, so an
  // unparenthesized quantifier cannot swallow a sibling.
  std::string formula(const Formula& f, bool right_open) {
    switch (f.kind()) {
      case FormulaKind::Pred: {
        if (f.terms().empty()) return f.name();
        std::string out = f.name() + "(";
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ", ";
          out += term(f.terms()[i]);
        }
        return out + ")";
      }
      case FormulaKind::Quant: {
        std::set<std::string> avoid(names_.begin(), names_.end());
        collect_names(f.body(), avoid);
        std::string name = f.name().empty() ? "x" : f.name();
        for (int k = 1; avoid.count(name) || name == "ALL" || name == "EX"; ++k)
          name = (f.name().empty() ? "x" : f.name()) + std::to_string(k);
        names_.push_back(name);
        std::string body = formula(f.body(), true);
        names_.pop_back();
        std::string out = (f.is_quant(Quantifier::All) ? "ALL " : "EX ") + name + ". " + body;
        return right_open ? out : "(" + out + ")";
      }
      case FormulaKind::Conn: {
        const int lv = level(f);
        if (f.op() == Connective::Not) return "~" + child(f.body(), lv, false, right_open);
        const bool right_assoc = f.op() == Connective::Imp;
        return child(f.lhs(), lv, right_assoc, false) + op_text(f.op()) +
               child(f.rhs(), lv, !right_assoc, right_open);
      }
    }
    return "";
  }

 private:
  std::string child(const Formula& c, int parent, bool paren_on_equal, bool right_open) {
    const int lv = level(c);
    if (c.is_quant()) return formula(c, right_open);
    if (lv < parent || (lv == parent && paren_on_equal)) return "(" + formula(c, true) + ")";
    return formula(c, right_open);
  }

  std::vector<std::string> names_;
};

}  // namespace

std::string print_term(const Term& t) { return Printer{}.term(t); }

std::string print_formula(const Formula& f) { return Printer{}.formula(f, true); }

std::string print_sequent(const Sequent& q) {
  std::string out;
  for (std::size_t i = 0; i < q.left.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(q.left[i]);
  }
  out += out.empty() ? "|-" : " |-";
  for (std::size_t i = 0; i < q.right.size(); ++i) out += (i ? ", " : " ") + print_formula(q.right[i]);
  return out;
}

}  // namespace ootp
