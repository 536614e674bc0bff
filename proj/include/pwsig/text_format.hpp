#pragma once

#include "pwsig/pwmap.hpp"
#include "pwsig/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pwsig {

/// Error in an element document. Syntax errors carry a 1-based line and
/// column; semantic errors (bad tiling, not a bijection) carry the line that
/// best locates the problem, or 0 when none does.
class parse_error : public std::runtime_error {
 public:
  enum class Kind { syntax, semantic };

  parse_error(Kind kind, std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(format(kind, line, column, what)), kind_(kind), line_(line), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(Kind kind, std::size_t line, std::size_t column, const std::string& what) {
    std::string where = "line " + std::to_string(line);
    if (column) where += ", column " + std::to_string(column);
    return (kind == Kind::syntax ? "syntax error at " : "invalid element at ") + where + ": " + what;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline Rational rational_token(const Token& t, std::size_t line) {
  try {
    return parse_rational(t.text);
  } catch (const std::invalid_argument& e) {
    throw parse_error(parse_error::Kind::syntax, line, t.column, e.what());
  }
}

inline void expect_keyword(const Token& t, std::string_view kw, std::size_t line) {
  if (t.text != kw) {
    throw parse_error(parse_error::Kind::syntax, line, t.column,
                      "expected '" + std::string(kw) + "', found '" + std::string(t.text) + "'");
  }
}

}  // namespace detail

/// Parses the line-oriented element format:
///   piece <a> <b> slope <s> offset <t>
///   point <x> <y>
/// '#' starts a comment.
inline PwMap parse_element(std::string_view doc) {
  using Kind = parse_error::Kind;
  struct PieceLine {
    AffinePiece piece;
    std::size_t line;
  };
  std::vector<PieceLine> pieces;
  std::map<Rational, std::pair<Rational, std::size_t>> points;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    const std::size_t nl = doc.find('\n', pos);
    const std::string_view line = doc.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? doc.size() + 1 : nl + 1;
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0].text == "piece") {
      if (tokens.size() != 7) {
        throw parse_error(Kind::syntax, line_no, tokens[0].column,
                          "expected 'piece <a> <b> slope <s> offset <t>'");
      }
      const Rational a = detail::rational_token(tokens[1], line_no);
      const Rational b = detail::rational_token(tokens[2], line_no);
      detail::expect_keyword(tokens[3], "slope", line_no);
      const Rational s = detail::rational_token(tokens[4], line_no);
      detail::expect_keyword(tokens[5], "offset", line_no);
      const Rational t = detail::rational_token(tokens[6], line_no);
      if (a < 0 || b > 1 || !(a < b)) {
        throw parse_error(Kind::semantic, line_no, 0, "piece source must satisfy 0 <= a < b <= 1");
      }
      if (s == 0) throw parse_error(Kind::semantic, line_no, 0, "slope must be nonzero");
      AffinePiece p{Interval(a, b), s, t};
      const Rational lo = p.slope > 0 ? p.at(a) : p.at(b);
      const Rational hi = p.slope > 0 ? p.at(b) : p.at(a);
      if (lo < 0 || hi > 1) throw parse_error(Kind::semantic, line_no, 0, "piece image leaves [0,1)");
      pieces.push_back({std::move(p), line_no});
    } else if (tokens[0].text == "point") {
      if (tokens.size() != 3) throw parse_error(Kind::syntax, line_no, tokens[0].column, "expected 'point <x> <y>'");
      const Rational x = detail::rational_token(tokens[1], line_no);
      const Rational y = detail::rational_token(tokens[2], line_no);
      if (x < 0 || x >= 1 || y < 0 || y >= 1) {
        throw parse_error(Kind::semantic, line_no, 0, "point and image must lie in [0,1)");
      }
      if (!points.emplace(x, std::make_pair(y, line_no)).second) {
        throw parse_error(Kind::semantic, line_no, 0, "second point line for " + to_string(x));
      }
    } else {
      throw parse_error(Kind::syntax, line_no, tokens[0].column, "unknown directive '" + std::string(tokens[0].text) + "'");
    }
  }
  if (pieces.empty()) throw parse_error(Kind::semantic, 0, 0, "document has no piece lines");

  std::sort(pieces.begin(), pieces.end(), [](const PieceLine& a, const PieceLine& b) { return a.piece.source < b.piece.source; });
  Rational expect = 0;
  for (const auto& pl : pieces) {
    if (pl.piece.source.left() != expect) {
      throw parse_error(Kind::semantic, pl.line, 0,
                        "piece sources do not tile [0,1): expected a piece starting at " + to_string(expect));
    }
    expect = pl.piece.source.right();
  }
  if (expect != 1) throw parse_error(Kind::semantic, pieces.back().line, 0, "piece sources do not reach 1");

  for (const auto& pl : pieces) {
    if (!points.count(pl.piece.source.left())) {
      throw parse_error(Kind::semantic, pl.line, 0, "no point line for left endpoint " + to_string(pl.piece.source.left()));
    }
  }
  std::map<Rational, std::size_t> by_image;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    by_image.emplace(pieces[k].piece.image().left(), k);
    if (by_image.size() != k + 1) {
      throw parse_error(Kind::semantic, pieces[k].line, 0, "interior image overlaps another piece");
    }
  }
  Rational covered = 0;
  for (const auto& [low, k] : by_image) {
    if (low != covered) {
      throw parse_error(Kind::semantic, pieces[k].line, 0, "interior images overlap or leave a gap near " + to_string(covered));
    }
    covered = pieces[k].piece.image().right();
  }
  for (const auto& [x, yl] : points) {
    const bool is_left = std::any_of(pieces.begin(), pieces.end(), [&](const PieceLine& pl) { return pl.piece.source.left() == x; });
    if (!is_left) throw parse_error(Kind::semantic, yl.second, 0, to_string(x) + " is not a piece left endpoint");
  }

  std::vector<AffinePiece> raw;
  std::vector<std::pair<RatPoint, RatPoint>> raw_points;
  for (const auto& pl : pieces) raw.push_back(pl.piece);
  for (const auto& [x, yl] : points) raw_points.emplace_back(RatPoint(x), RatPoint(yl.first));
  try {
    return PwMap::build(std::move(raw), raw_points);
  } catch (const invalid_element& e) {
    // Only the point set can still be wrong here; point at the first
    // offending point line.
    std::size_t line = 0;
    for (const auto& [x, yl] : points) {
      if (!by_image.count(yl.first)) {
        line = yl.second;
        break;
      }
    }
    throw parse_error(Kind::semantic, line, 0, e.what());
  }
}

/// Canonical document: pieces by left endpoint, then point lines in the same
/// order, lowest-terms `p/q` everywhere, '\n' line ends.
inline std::string serialize_element(const PwMap& h) {
  std::string out;
  for (const auto& p : h.pieces()) {
    out += "piece " + to_string(p.source.left()) + " " + to_string(p.source.right()) + " slope " +
           to_string(p.slope) + " offset " + to_string(p.offset) + "\n";
  }
  for (std::size_t k = 0; k < h.piece_count(); ++k) {
    out += "point " + to_string(h.piece(k).source.left()) + " " + to_string(h.point_image(k)) + "\n";
  }
  return out;
}

}  // namespace pwsig
