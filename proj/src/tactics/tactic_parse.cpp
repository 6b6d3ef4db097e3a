#include <algorithm>
#include <cctype>

#include "ootp/tactics.hpp"

namespace ootp {

TacticSyntaxError::TacticSyntaxError(std::string message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

struct Word {
  std::string text;
  std::size_t pos;
};

std::vector<Word> split(std::string_view s) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), i++});
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({std::string(s.substr(start, i - start)), start});
    } else {
      throw TacticSyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  return out;
}

bool is_goal_name(const std::string& w) {
  return w.size() > 1 && w[0] == 'g' && std::all_of(w.begin() + 1, w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class TacticParser {
 public:
  explicit TacticParser(std::string_view text) : words_(split(text)), end_(text.size()) {}

  TacticObject parse() {
    TacticObject t = orelse_expr();
    if (pos_ < words_.size()) fail("expected THEN, ORELSE or end of input");
    return t;
  }

 private:
  TacticObject orelse_expr() {
    TacticObject t = then_expr();
    while (accept("ORELSE")) t = orelse(t, then_expr());
    return t;
  }

  TacticObject then_expr() {
    TacticObject t = unary();
    while (accept("THEN")) t = then_(t, unary());
    return t;
  }

  TacticObject unary() {
    if (accept("REPEAT")) return repeat(unary());
    if (accept("TRY")) return try_(unary());
    if (accept("ALLGOALS")) return all_goals(unary());
    return atom();
  }

  TacticObject atom() {
    if (pos_ >= words_.size()) fail("expected tactic");
    const Word w = words_[pos_++];
    if (w.text == "(") {
      TacticObject t = orelse_expr();
      if (!accept(")")) fail("expected ')'");
      return t;
    }
    if (w.text == "ID") return id_tac();
    if (w.text == "FAIL") return fail_tac();
    if (w.text == "DEPTH") {
      if (pos_ >= words_.size() || !std::all_of(words_[pos_].text.begin(), words_[pos_].text.end(), ::isdigit))
        fail("expected depth after DEPTH");
      return depth_tac(std::stoi(words_[pos_++].text));
    }
    if (w.text == "basic") return basic_tac(goal());
    if (w.text == "rule") {
      if (pos_ >= words_.size()) fail("expected rule name");
      const Word name = words_[pos_];
      auto id = rule_from_name(name.text);
      if (!id) throw TacticSyntaxError("unknown rule '" + name.text + "'", name.pos);
      ++pos_;
      return rule_tac(*id, goal());
    }
    if (auto id = rule_from_name(w.text)) return rule_tac(*id, goal());
    throw TacticSyntaxError("unknown tactic '" + w.text + "'", w.pos);
  }

  std::string goal() {
    if (pos_ < words_.size() && is_goal_name(words_[pos_].text)) return words_[pos_++].text;
    return {};
  }

  bool accept(const char* w) {
    if (pos_ < words_.size() && words_[pos_].text == w) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    if (pos_ >= words_.size()) throw TacticSyntaxError(msg + ", found end of input", end_);
    throw TacticSyntaxError(msg + ", found '" + words_[pos_].text + "'", words_[pos_].pos);
  }

  std::vector<Word> words_;
  std::size_t pos_ = 0;
  std::size_t end_;
};

}  // namespace

TacticObject parse_tactic(std::string_view text) { return TacticParser(text).parse(); }

}  // namespace ootp
