#include <algorithm>
#include <cctype>

#include "ootp/translate.hpp"

namespace ootp {

ImpSyntaxError::ImpSyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::optional<std::size_t> ImpProgram::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

namespace {

enum class TokKind { Ident, Number, Punct, End };

struct Tok {
  TokKind kind;
  std::string text;
  std::size_t line, column;
};

bool is_keyword(const std::string& w) {
  return w == "var" || w == "goto" || w == "if" || w == "then" || w == "else" || w == "stop";
}

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({TokKind::Ident, std::string(s.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({TokKind::Number, std::string(s.substr(i, j - i)), line, col});
      advance(j - i);
    } else {
      static const char* const two[] = {":=", "<=", ">="};
      std::string op;
      for (const char* t : two)
        if (s.substr(i, 2) == t) op = t;
      if (op.empty() && std::string_view(":;()+-<>=").find(c) != std::string_view::npos) op = std::string(1, c);
      if (op.empty()) throw ImpSyntaxError(std::string("unexpected character '") + c + "'", line, col);
      out.push_back({TokKind::Punct, op, line, col});
      advance(op.size());
    }
  }
  out.push_back({TokKind::End, "", line, col});
  return out;
}

class ImpParser {
 public:
  explicit ImpParser(std::string_view text) : toks_(lex(text)) {}

  ImpProgram parse() {
    if (accept_word("var")) {
      declaration();
      while (accept(";")) {
        if (!(peek().kind == TokKind::Ident && peek(1).text == ":=")) break;
        declaration();
      }
    }
    while (peek().kind != TokKind::End) {
      const Tok label = peek();
      if (label.kind != TokKind::Ident || is_keyword(label.text)) fail("expected block label");
      ++pos_;
      if (p_.label_index(label.text)) error("duplicate label '" + label.text + "'", label);
      expect(":");
      p_.labels.push_back(label.text);
      block_starts_.push_back(label);
      p_.blocks.push_back(sequence());
    }
    if (p_.blocks.empty()) fail("empty program: expected at least one labeled block");
    std::size_t next_goto = 0;
    for (std::size_t b = 0; b < p_.blocks.size(); ++b) {
      resolve(p_.blocks[b], next_goto);
      if (!always_ends(p_.blocks[b]))
        error("control falls off the end of block '" + p_.labels[b] + "'", block_starts_[b]);
    }
    return std::move(p_);
  }

 private:
  void declaration() {
    const Tok name = peek();
    if (name.kind != TokKind::Ident || is_keyword(name.text)) fail("expected variable name");
    ++pos_;
    for (const auto& v : p_.vars)
      if (v == name.text) error("duplicate variable '" + name.text + "'", name);
    expect(":=");
    const bool negative = accept("-");
    const Tok num = peek();
    if (num.kind != TokKind::Number) fail("expected integer initial value");
    ++pos_;
    p_.vars.push_back(name.text);
    p_.init.push_back(Integer::parse((negative ? "-" : "") + num.text));
  }

  // Statements up to the next label, ')', 'else' or end of input.
  std::vector<Stmt> sequence() {
    std::vector<Stmt> out;
    for (;;) {
      while (accept(";")) {
      }
      const Tok& t = peek();
      if (t.kind == TokKind::End || t.text == ")" || t.text == "else") break;
      if (t.kind == TokKind::Ident && !is_keyword(t.text) && peek(1).text == ":") break;
      statement(out);
    }
    return out;
  }

  // Appends one statement; a parenthesized group appends its members.
  void statement(std::vector<Stmt>& out) {
    const Tok t = peek();
    if (accept("(")) {
      std::vector<Stmt> inner = sequence();
      expect(")");
      if (inner.empty()) error("empty statement group", t);
      out.insert(out.end(), std::make_move_iterator(inner.begin()), std::make_move_iterator(inner.end()));
      return;
    }
    Stmt s;
    s.line = t.line;
    s.column = t.column;
    if (accept_word("goto")) {
      const Tok label = peek();
      if (label.kind != TokKind::Ident || is_keyword(label.text)) fail("expected label after goto");
      ++pos_;
      s.kind = Stmt::Kind::Goto;
      s.label = label.text;
      gotos_.push_back(label);
    } else if (accept_word("stop")) {
      s.kind = Stmt::Kind::Stop;
    } else if (accept_word("if")) {
      s.kind = Stmt::Kind::If;
      s.cond = condition();
      if (!accept_word("then")) fail("expected 'then'");
      statement(s.then_branch);
      if (accept_word("else")) statement(s.else_branch);
    } else if (t.kind == TokKind::Ident && !is_keyword(t.text)) {
      ++pos_;
      s.kind = Stmt::Kind::Assign;
      s.var = variable(t);
      expect(":=");
      s.expr = expression();
    } else {
      fail("expected statement");
    }
    out.push_back(std::move(s));
  }

  Cond condition() {
    Cond c;
    c.lhs = expression();
    const Tok op = peek();
    if (op.text == "<") c.op = CmpOp::Lt;
    else if (op.text == ">") c.op = CmpOp::Gt;
    else if (op.text == "=") c.op = CmpOp::Eq;
    else if (op.text == "<=") c.op = CmpOp::Le;
    else if (op.text == ">=") c.op = CmpOp::Ge;
    else fail("expected comparison operator");
    ++pos_;
    c.rhs = expression();
    return c;
  }

  Sum expression() {
    Sum out;
    bool negative = accept("-");
    for (;;) {
      operand(out, negative);
      if (accept("+")) negative = false;
      else if (accept("-")) negative = true;
      else return out;
    }
  }

  void operand(Sum& out, bool negative) {
    const Tok t = peek();
    if (t.kind == TokKind::Number) {
      ++pos_;
      const Integer v = Integer::parse(t.text);
      out.constant = negative ? out.constant - v : out.constant + v;
    } else if (t.kind == TokKind::Ident && !is_keyword(t.text)) {
      ++pos_;
      out.terms.push_back({negative, variable(t)});
    } else if (accept("(")) {
      Sum inner = expression();
      expect(")");
      for (auto occ : inner.terms) out.terms.push_back({occ.negative != negative, occ.var});
      out.constant = negative ? out.constant - inner.constant : out.constant + inner.constant;
    } else {
      fail("expected integer expression");
    }
  }

  std::size_t variable(const Tok& t) {
    for (std::size_t i = 0; i < p_.vars.size(); ++i)
      if (p_.vars[i] == t.text) return i;
    error("undeclared variable '" + t.text + "'", t);
  }

  // Goto targets, visited in parse order.
  void resolve(std::vector<Stmt>& seq, std::size_t& next) {
    for (auto& s : seq) {
      if (s.kind == Stmt::Kind::Goto) {
        const Tok& at = gotos_[next++];
        auto idx = p_.label_index(s.label);
        if (!idx) error("undefined label '" + s.label + "'", at);
        s.target = *idx;
      } else if (s.kind == Stmt::Kind::If) {
        resolve(s.then_branch, next);
        resolve(s.else_branch, next);
      }
    }
  }

  // True when every path through seq ends in goto or stop. Statements after one that always
  // ends are rejected as unreachable.
  bool always_ends(const std::vector<Stmt>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const Stmt& s = seq[i];
      bool ends = s.kind == Stmt::Kind::Goto || s.kind == Stmt::Kind::Stop;
      if (s.kind == Stmt::Kind::If) {
        const bool t = always_ends(s.then_branch);
        const bool e = always_ends(s.else_branch);
        ends = t && e;
      }
      if (ends) {
        if (i + 1 != seq.size())
          throw ImpSyntaxError("unreachable statement after goto or stop", seq[i + 1].line, seq[i + 1].column);
        return true;
      }
    }
    return false;
  }

  const Tok& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  bool accept(const char* punct) {
    if (peek().kind == TokKind::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(const char* word) {
    if (peek().kind == TokKind::Ident && peek().text == word) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const char* punct) {
    if (!accept(punct)) fail(std::string("expected '") + punct + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Tok& t = peek();
    error(msg + (t.kind == TokKind::End ? ", found end of input" : ", found '" + t.text + "'"), t);
  }

  [[noreturn]] static void error(const std::string& msg, const Tok& at) {
    throw ImpSyntaxError(msg, at.line, at.column);
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  ImpProgram p_;
  std::vector<Tok> gotos_;
  std::vector<Tok> block_starts_;
};

}  // namespace

ImpProgram parse_imp(std::string_view text) { return ImpParser(text).parse(); }

}  // namespace ootp
