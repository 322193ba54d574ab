#include "tvdiam/bif.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace tvdiam {

namespace {

struct Token {
  enum Kind { Word, Punct, End } kind = End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token token;
    token.line = line_;
    token.column = column_;
    if (pos_ >= text_.size()) return token;

    const char c = text_[pos_];
    if (is_punct(c)) {
      token.kind = Token::Punct;
      token.text = std::string(1, c);
      advance();
      return token;
    }
    token.kind = Token::Word;
    while (pos_ < text_.size() && !is_punct(text_[pos_]) &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      token.text.push_back(text_[pos_]);
      advance();
    }
    return token;
  }

  // Raw text until the next ';' (used for property lines).
  std::string until_semicolon() {
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != ';') {
      out.push_back(text_[pos_]);
      advance();
    }
    if (pos_ >= text_.size()) {
      throw SyntaxError(line_, column_, "unterminated property line");
    }
    advance();  // ';'
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) {
      out.pop_back();
    }
    std::size_t start = 0;
    while (start < out.size() &&
           std::isspace(static_cast<unsigned char>(out[start]))) {
      ++start;
    }
    return out.substr(start);
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static bool is_punct(char c) {
    return c == '{' || c == '}' || c == '(' || c == ')' || c == '[' ||
           c == ']' || c == '|' || c == ',' || c == ';';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        advance();
        advance();
        while (pos_ + 1 < text_.size() &&
               !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          advance();
        }
        if (pos_ + 1 >= text_.size()) {
          throw SyntaxError(line_, column_, "unterminated comment");
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(const std::string& text, double row_tolerance)
      : lexer_(text), row_tolerance_(row_tolerance) {
    lookahead_ = lexer_.next();
  }

  NetworkDocument parse() {
    parse_network_block();
    while (lookahead_.kind != Token::End) {
      if (lookahead_.text == "variable") {
        parse_variable_block();
      } else if (lookahead_.text == "probability") {
        parse_probability_block();
      } else {
        fail("expected 'variable' or 'probability'");
      }
    }
    return assemble();
  }

 private:
  struct ProbabilityBlock {
    std::string child;
    std::vector<std::string> parents;
    std::optional<std::vector<double>> flat_table;
    std::vector<std::pair<std::vector<std::string>, std::vector<double>>> rows;
    std::vector<std::string> properties;
    std::size_t line = 0;
    std::size_t column = 0;
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(lookahead_.line, lookahead_.column, what);
  }

  Token take() {
    Token current = lookahead_;
    lookahead_ = lexer_.next();
    return current;
  }

  Token expect_word(const std::string& what) {
    if (lookahead_.kind != Token::Word) fail("expected " + what);
    return take();
  }

  void expect_punct(const std::string& text) {
    if (lookahead_.kind != Token::Punct || lookahead_.text != text) {
      fail("expected '" + text + "'");
    }
    take();
  }

  bool at_punct(const std::string& text) const {
    return lookahead_.kind == Token::Punct && lookahead_.text == text;
  }

  double expect_number() {
    Token token = expect_word("a number");
    char* end = nullptr;
    const double value = std::strtod(token.text.c_str(), &end);
    if (end != token.text.c_str() + token.text.size()) {
      throw SyntaxError(token.line, token.column,
                        "not a number: " + token.text);
    }
    return value;
  }

  std::vector<double> number_list_until_semicolon() {
    std::vector<double> values;
    values.push_back(expect_number());
    while (at_punct(",")) {
      take();
      values.push_back(expect_number());
    }
    expect_punct(";");
    return values;
  }

  void parse_network_block() {
    if (lookahead_.text != "network") fail("expected 'network'");
    take();
    if (lookahead_.kind == Token::Word) doc_.name = take().text;
    expect_punct("{");
    while (!at_punct("}")) {
      if (lookahead_.text == "property") {
        take();
        doc_.network_properties.push_back(lexer_take_property());
      } else {
        fail("expected 'property' or '}'");
      }
    }
    take();
  }

  std::string lexer_take_property() {
    // The lookahead token already consumed part of the property text; put it
    // back together with the raw remainder of the line.
    if (at_punct(";")) {
      take();
      return "";
    }
    const std::string head = lookahead_.text;
    std::string tail = lexer_.until_semicolon();
    lookahead_ = lexer_.next();
    if (tail.empty()) return head;
    return head + " " + tail;
  }

  void parse_variable_block() {
    take();  // 'variable'
    Token name = expect_word("a variable name");
    DiscreteVariable variable;
    variable.name = name.text;

    expect_punct("{");
    bool saw_type = false;
    std::vector<std::string> properties;
    while (!at_punct("}")) {
      if (lookahead_.text == "type") {
        take();
        if (expect_word("'discrete'").text != "discrete") {
          fail("only discrete variables are supported");
        }
        expect_punct("[");
        const double count = expect_number();
        expect_punct("]");
        expect_punct("{");
        variable.levels.push_back(expect_word("a level name").text);
        while (at_punct(",")) {
          take();
          variable.levels.push_back(expect_word("a level name").text);
        }
        expect_punct("}");
        expect_punct(";");
        if (static_cast<std::size_t>(count) != variable.levels.size()) {
          throw SyntaxError(name.line, name.column,
                            "declared level count does not match the list");
        }
        saw_type = true;
      } else if (lookahead_.text == "property") {
        take();
        const std::string text = lexer_take_property();
        if (text == "ordinal true") {
          variable.ordinal = true;
        } else if (text == "ordinal false") {
          variable.ordinal = false;
        } else {
          properties.push_back(text);
        }
      } else {
        fail("expected 'type', 'property' or '}'");
      }
    }
    take();
    if (!saw_type) {
      throw SyntaxError(name.line, name.column,
                        "variable " + variable.name + " has no type clause");
    }
    if (!properties.empty()) {
      doc_.variable_properties[variable.name] = std::move(properties);
    }
    variables_.push_back(std::move(variable));
  }

  void parse_probability_block() {
    ProbabilityBlock block;
    block.line = lookahead_.line;
    block.column = lookahead_.column;
    take();  // 'probability'
    expect_punct("(");
    block.child = expect_word("a variable name").text;
    if (at_punct("|")) {
      take();
      block.parents.push_back(expect_word("a parent name").text);
      while (at_punct(",")) {
        take();
        block.parents.push_back(expect_word("a parent name").text);
      }
    }
    expect_punct(")");
    expect_punct("{");
    while (!at_punct("}")) {
      if (lookahead_.text == "table") {
        take();
        if (block.flat_table || !block.rows.empty()) {
          fail("mixed 'table' and per-assignment rows");
        }
        block.flat_table = number_list_until_semicolon();
      } else if (lookahead_.text == "property") {
        take();
        block.properties.push_back(lexer_take_property());
      } else if (at_punct("(")) {
        take();
        std::vector<std::string> assignment;
        assignment.push_back(expect_word("a level name").text);
        while (at_punct(",")) {
          take();
          assignment.push_back(expect_word("a level name").text);
        }
        expect_punct(")");
        if (block.flat_table) fail("mixed 'table' and per-assignment rows");
        block.rows.emplace_back(std::move(assignment),
                                number_list_until_semicolon());
      } else {
        fail("expected 'table', an assignment tuple, 'property' or '}'");
      }
    }
    take();
    blocks_.push_back(std::move(block));
  }

  const DiscreteVariable& variable_named(const std::string& name,
                                         const ProbabilityBlock& block) const {
    for (const auto& v : variables_) {
      if (v.name == name) return v;
    }
    throw SyntaxError(block.line, block.column, "unknown variable " + name);
  }

  NetworkDocument assemble() {
    std::vector<Edge> edges;
    std::vector<Cpt> cpts;
    auto index_of = [this](const std::string& name) {
      for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return static_cast<int>(i);
      }
      return -1;
    };

    for (const ProbabilityBlock& block : blocks_) {
      const DiscreteVariable& child = variable_named(block.child, block);
      std::vector<DiscreteVariable> parents;
      for (const auto& p : block.parents) {
        parents.push_back(variable_named(p, block));
        edges.push_back({index_of(p), index_of(block.child)});
      }

      std::vector<std::size_t> radices;
      for (const auto& p : parents) radices.push_back(p.cardinality());
      const std::size_t n_rows = mixed_radix_capacity(radices);
      const std::size_t n_cols = child.cardinality();

      Matrix table(n_rows, n_cols);
      if (block.flat_table) {
        if (block.flat_table->size() != n_rows * n_cols) {
          throw SyntaxError(block.line, block.column,
                            "table for " + block.child + " has " +
                                std::to_string(block.flat_table->size()) +
                                " values, expected " +
                                std::to_string(n_rows * n_cols));
        }
        for (std::size_t r = 0; r < n_rows; ++r) {
          for (std::size_t c = 0; c < n_cols; ++c) {
            table.at(r, c) = (*block.flat_table)[r * n_cols + c];
          }
        }
      } else {
        std::vector<bool> filled(n_rows, false);
        for (const auto& [assignment, values] : block.rows) {
          if (assignment.size() != parents.size()) {
            throw SyntaxError(block.line, block.column,
                              "assignment arity mismatch for " + block.child);
          }
          std::vector<std::size_t> digits;
          for (std::size_t i = 0; i < parents.size(); ++i) {
            const int level = parents[i].level_index(assignment[i]);
            if (level < 0) throw UnknownLevel(parents[i].name, assignment[i]);
            digits.push_back(static_cast<std::size_t>(level));
          }
          const std::size_t row = mixed_radix_encode(digits, radices);
          if (filled[row]) {
            throw SyntaxError(block.line, block.column,
                              "duplicate row for " + block.child);
          }
          if (values.size() != n_cols) {
            throw SyntaxError(block.line, block.column,
                              "row arity mismatch for " + block.child);
          }
          for (std::size_t c = 0; c < n_cols; ++c) table.at(row, c) = values[c];
          filled[row] = true;
        }
        for (std::size_t r = 0; r < n_rows; ++r) {
          if (!filled[r]) {
            std::string description;
            auto digits = mixed_radix_decode(r, radices);
            for (std::size_t i = 0; i < parents.size(); ++i) {
              if (i) description += ", ";
              description += parents[i].levels[digits[i]];
            }
            throw MissingRow(block.child, description);
          }
        }
      }

      cpts.emplace_back(child, std::move(parents), std::move(table),
                        row_tolerance_);
      if (!block.properties.empty()) {
        doc_.probability_properties[block.child] = block.properties;
      }
    }

    doc_.format = NetworkFormat::Bif;
    doc_.net = build_network(variables_, std::move(edges), std::move(cpts),
                             &doc_.warnings);
    return std::move(doc_);
  }

  Lexer lexer_;
  double row_tolerance_;
  Token lookahead_;
  NetworkDocument doc_;
  std::vector<DiscreteVariable> variables_;
  std::vector<ProbabilityBlock> blocks_;
};

// Shortest decimal form that parses back to the same double, so repeated
// parse/serialize cycles are byte-stable.
std::string format_value(double v) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, end);
}

}  // namespace

NetworkDocument parse_bif(const std::string& text, double row_tolerance) {
  Parser parser(text, row_tolerance);
  return parser.parse();
}

std::string to_bif(const NetworkDocument& doc) {
  std::ostringstream out;
  out << "network " << doc.name << " {\n";
  for (const auto& p : doc.network_properties) {
    out << "  property " << p << " ;\n";
  }
  out << "}\n";

  const BayesNet& net = doc.net;
  for (const auto& v : net.variables()) {
    out << "variable " << v.name << " {\n";
    out << "  type discrete [ " << v.cardinality() << " ] { ";
    for (std::size_t i = 0; i < v.levels.size(); ++i) {
      if (i) out << ", ";
      out << v.levels[i];
    }
    out << " };\n";
    if (v.ordinal) out << "  property ordinal true ;\n";
    auto it = doc.variable_properties.find(v.name);
    if (it != doc.variable_properties.end()) {
      for (const auto& p : it->second) out << "  property " << p << " ;\n";
    }
    out << "}\n";
  }

  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const Cpt& cpt = net.cpt(static_cast<int>(i));
    out << "probability ( " << cpt.child().name;
    if (!cpt.parents().empty()) {
      out << " | ";
      for (std::size_t p = 0; p < cpt.parents().size(); ++p) {
        if (p) out << ", ";
        out << cpt.parents()[p].name;
      }
    }
    out << " ) {\n";
    auto it = doc.probability_properties.find(cpt.child().name);
    if (it != doc.probability_properties.end()) {
      for (const auto& p : it->second) out << "  property " << p << " ;\n";
    }
    if (cpt.parents().empty()) {
      out << "  table ";
      for (std::size_t c = 0; c < cpt.column_count(); ++c) {
        if (c) out << ", ";
        out << format_value(cpt.table().at(0, c));
      }
      out << ";\n";
    } else {
      auto radices = cpt.parent_radices();
      for (std::size_t r = 0; r < cpt.row_count(); ++r) {
        auto digits = mixed_radix_decode(r, radices);
        out << "  (";
        for (std::size_t p = 0; p < digits.size(); ++p) {
          if (p) out << ", ";
          out << cpt.parents()[p].levels[digits[p]];
        }
        out << ") ";
        for (std::size_t c = 0; c < cpt.column_count(); ++c) {
          if (c) out << ", ";
          out << format_value(cpt.table().at(r, c));
        }
        out << ";\n";
      }
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace tvdiam
