#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "dforall/frontend.h"

namespace dforall {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum Kind { kLParen, kRParen, kLBracket, kRBracket, kComma, kAtom, kEnd } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      SkipSpaceAndComments();
      const int line = line_;
      const int column = column_;
      if (pos_ >= text_.size()) {
        tokens.push_back({Token::kEnd, "", line, column});
        return tokens;
      }
      const char c = text_[pos_];
      Token::Kind kind = Token::kAtom;
      switch (c) {
        case '(': kind = Token::kLParen; break;
        case ')': kind = Token::kRParen; break;
        case '[': kind = Token::kLBracket; break;
        case ']': kind = Token::kRBracket; break;
        case ',': kind = Token::kComma; break;
        default: break;
      }
      if (kind != Token::kAtom) {
        Advance();
        tokens.push_back({kind, std::string(1, c), line, column});
        continue;
      }
      std::string atom;
      while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) {
        atom.push_back(text_[pos_]);
        Advance();
      }
      tokens.push_back({Token::kAtom, std::move(atom), line, column});
    }
  }

 private:
  static bool IsDelimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '[' ||
           c == ']' || c == ',' || c == ';';
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_{0};
  int line_{1};
  int column_{1};
};

bool LooksNumeric(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.');
}

const std::map<std::string, ExprKind, std::less<>>& UnaryFunctions() {
  static const std::map<std::string, ExprKind, std::less<>> table{
      {"abs", ExprKind::kAbs},   {"sqrt", ExprKind::kSqrt}, {"exp", ExprKind::kExp},
      {"log", ExprKind::kLog},   {"sin", ExprKind::kSin},   {"cos", ExprKind::kCos},
      {"tan", ExprKind::kTan},   {"asin", ExprKind::kAsin}, {"acos", ExprKind::kAcos},
      {"atan", ExprKind::kAtan}, {"sinh", ExprKind::kSinh}, {"cosh", ExprKind::kCosh},
      {"tanh", ExprKind::kTanh},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Problem Run() {
    Problem problem;
    while (Peek().kind != Token::kEnd) {
      Expect(Token::kLParen, "'('");
      const Token head = ExpectAtom("command");
      if (head.text == "declare-const") {
        Declaration d = ParseDeclarationTail();
        if (free_.count(d.name) || bound_.count(d.name)) {
          Fail("variable '" + d.name + "' declared twice", head);
        }
        free_.insert(d.name);
        problem.vars.push_back(std::move(d));
        Expect(Token::kRParen, "')'");
      } else if (head.text == "assert") {
        problem.assertions.push_back(ParseForm());
        Expect(Token::kRParen, "')'");
      } else {
        Fail("unknown command '" + head.text + "'", head);
      }
    }
    return problem;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  Token Next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void Fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.column);
  }

  Token Expect(Token::Kind kind, const char* what) {
    const Token t = Next();
    if (t.kind != kind) {
      Fail(std::string("expected ") + what + ", found " +
               (t.kind == Token::kEnd ? std::string("end of input") : "'" + t.text + "'"),
           t);
    }
    return t;
  }

  Token ExpectAtom(const char* what) { return Expect(Token::kAtom, what); }

  Rational ParseNumber(const Token& t) {
    try {
      return ParseRational(t.text);
    } catch (const std::invalid_argument& e) {
      Fail(e.what(), t);
    }
  }

  // `<name> Real [<rat>, <rat>]`, without the surrounding parentheses.
  Declaration ParseDeclarationTail() {
    const Token name = ExpectAtom("variable name");
    if (LooksNumeric(name.text)) Fail("invalid variable name '" + name.text + "'", name);
    const Token sort = ExpectAtom("sort");
    if (sort.text != "Real") Fail("unsupported sort '" + sort.text + "'", sort);
    if (Peek().kind != Token::kLBracket) {
      Fail("variable '" + name.text + "' needs a bounded domain [lo, hi]", Peek());
    }
    Next();
    const Token lo_tok = ExpectAtom("lower bound");
    Expect(Token::kComma, "','");
    const Token hi_tok = ExpectAtom("upper bound");
    Expect(Token::kRBracket, "']'");
    Declaration d{name.text, ParseNumber(lo_tok), ParseNumber(hi_tok)};
    if (d.lo > d.hi) Fail("empty domain for '" + d.name + "'", lo_tok);
    return d;
  }

  Formula ParseForm() {
    const Token open = Expect(Token::kLParen, "'(' starting a formula");
    const Token head = ExpectAtom("formula operator");
    const std::string& op = head.text;
    static const std::map<std::string, Comparison, std::less<>> comparisons{
        {"<", Comparison::kLt}, {"<=", Comparison::kLe}, {"=", Comparison::kEq},
        {">=", Comparison::kGe}, {">", Comparison::kGt}};
    Formula result = Formula::Compare(Comparison::kGe, Expr::Constant(0L), Expr::Constant(0L));
    if (const auto it = comparisons.find(op); it != comparisons.end()) {
      Expr lhs = ParseTerm();
      Expr rhs = ParseTerm();
      result = Formula::Compare(it->second, std::move(lhs), std::move(rhs));
    } else if (op == "and" || op == "or") {
      std::vector<Formula> children;
      while (Peek().kind == Token::kLParen) children.push_back(ParseForm());
      if (children.empty()) Fail("'" + op + "' needs at least one argument", head);
      result = op == "and" ? Formula::And(std::move(children)) : Formula::Or(std::move(children));
    } else if (op == "not") {
      result = Formula::Not(ParseForm());
    } else if (op == "=>") {
      Formula premise = ParseForm();
      Formula conclusion = ParseForm();
      result = Formula::Implies(std::move(premise), std::move(conclusion));
    } else if (op == "forall") {
      Expect(Token::kLParen, "'(' starting the binding list");
      std::vector<Declaration> bound;
      while (Peek().kind == Token::kLParen) {
        const Token at = Next();
        Declaration d = ParseDeclarationTail();
        Expect(Token::kRParen, "')'");
        if (free_.count(d.name)) {
          Fail("bound variable '" + d.name + "' clashes with a declared variable", at);
        }
        if (bound_.count(d.name)) Fail("bound variable '" + d.name + "' shadows another", at);
        bound.push_back(std::move(d));
      }
      Expect(Token::kRParen, "')'");
      if (bound.empty()) Fail("forall needs at least one binding", head);
      for (const Declaration& d : bound) bound_.insert(d.name);
      Formula body = ParseForm();
      for (const Declaration& d : bound) bound_.erase(d.name);
      result = Formula::Forall(std::move(bound), std::move(body));
    } else if (op == "exists") {
      Fail("existential quantifiers are not supported; free variables are existential", head);
    } else {
      Fail("unknown formula operator '" + op + "'", head);
    }
    Expect(Token::kRParen, "')'");
    (void)open;
    return result;
  }

  Expr ParseTerm() {
    const Token t = Next();
    if (t.kind == Token::kAtom) {
      if (LooksNumeric(t.text)) return Expr::Constant(ParseNumber(t));
      if (!free_.count(t.text) && !bound_.count(t.text)) {
        Fail("undeclared variable '" + t.text + "'", t);
      }
      return Expr::Variable(t.text);
    }
    if (t.kind != Token::kLParen) Fail("expected a term, found '" + t.text + "'", t);
    const Token fn = ExpectAtom("function symbol");
    std::vector<Expr> args;
    std::vector<Token> arg_tokens;
    while (Peek().kind != Token::kRParen && Peek().kind != Token::kEnd) {
      arg_tokens.push_back(Peek());
      args.push_back(ParseTerm());
    }
    Expect(Token::kRParen, "')'");
    if (args.empty()) Fail("'" + fn.text + "' needs arguments", fn);
    auto fold = [&](ExprKind kind) {
      Expr acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) acc = Expr::Binary(kind, acc, args[i]);
      return acc;
    };
    if (fn.text == "+") return fold(ExprKind::kAdd);
    if (fn.text == "*") return fold(ExprKind::kMul);
    if (fn.text == "-") return args.size() == 1 ? -args[0] : fold(ExprKind::kSub);
    if (fn.text == "/") {
      if (args.size() < 2) Fail("'/' needs two arguments", fn);
      return fold(ExprKind::kDiv);
    }
    if (fn.text == "min" || fn.text == "max") {
      if (args.size() < 2) Fail("'" + fn.text + "' needs two arguments", fn);
      return fold(fn.text == "min" ? ExprKind::kMin : ExprKind::kMax);
    }
    if (fn.text == "^") {
      if (args.size() != 2) Fail("'^' needs two arguments", fn);
      Expr exponent = FoldConstants(args[1]);
      if (!exponent.is_constant() || denominator(exponent.value()) != 1 ||
          exponent.value() == 0 || abs(exponent.value()) > 1024) {
        Fail("exponent of '^' must be a nonzero integer constant", arg_tokens[1]);
      }
      return Expr::Pow(args[0], exponent.value().convert_to<int>());
    }
    const auto& unary = UnaryFunctions();
    if (const auto it = unary.find(fn.text); it != unary.end()) {
      if (args.size() != 1) Fail("'" + fn.text + "' takes one argument", fn);
      return Expr::Unary(it->second, args[0]);
    }
    Fail("unsupported function symbol '" + fn.text + "'", fn);
  }

  std::vector<Token> tokens_;
  std::size_t pos_{0};
  std::set<std::string> free_;
  std::set<std::string> bound_;
};

}  // namespace

Problem Parse(std::string_view text) {
  return Parser(Lexer(text).Run()).Run();
}

}  // namespace dforall
