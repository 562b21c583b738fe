#ifndef GUARD_CHEV_PARSE_H
#define GUARD_CHEV_PARSE_H

#include <cctype>
#include <string>

#include "field.h"
#include "groupnf.h"

namespace chev
{

// Element expressions:
//   expr   := factor { "*" factor } | "1"
//   factor := "x[" root "](" scalar ")" | "n[" root "]" [ "(" scalar ")" ]
//           | "s" INT | "h[" INT ":" scalar { "," INT ":" scalar } "]"
//           | "w0" | "wP[" nodes "]"
// Roots are digit strings with an optional leading "-"; nodes are 1-based.
template<typename F>
class ElementParser
{
public:
  ElementParser(RootSystem const &rs, std::string text)
    : _rs(rs), _s(std::move(text))
  {}

  Word<F> parse()
  {
    Word<F> word;
    skip();
    if (_s.substr(_p) == "1")
      return word;
    for (;;) {
      factor(word);
      skip();
      if (_p == _s.size())
        return word;
      expect('*');
    }
  }

private:
  RootSystem const &_rs;
  std::string _s;
  std::size_t _p = 0;

  [[noreturn]] void fail(std::string const &what) const
  {
    throw ParseError(what + " at position " + std::to_string(_p) + " in '" +
                     _s + "'");
  }

  void skip()
  {
    while (_p < _s.size() && std::isspace((unsigned char)_s[_p]))
      ++_p;
  }

  void expect(char c)
  {
    skip();
    if (_p >= _s.size() || _s[_p] != c)
      fail(std::string("expected '") + c + "'");
    ++_p;
  }

  bool peek(std::string const &t)
  {
    skip();
    return _s.compare(_p, t.size(), t) == 0;
  }

  // text up to (not including) the next c
  std::string until(char c)
  {
    auto e = _s.find(c, _p);
    if (e == std::string::npos)
      fail(std::string("missing '") + c + "'");
    std::string t = _s.substr(_p, e - _p);
    _p = e;
    return t;
  }

  int root()
  {
    std::size_t at = _p;
    std::string t = until(']');
    bool neg = !t.empty() && t[0] == '-';
    std::string digits = neg ? t.substr(1) : t;
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      _p = at;
      fail("bad root '" + t + "'");
    }
    int r = _rs.parse(digits);
    return neg ? _rs.neg(r) : r;
  }

  F scalar(char close)
  {
    std::size_t at = _p;
    std::string t = until(close);
    try {
      return F::parse(t);
    } catch (ParseError const &e) {
      _p = at;
      fail(e.what());
    }
  }

  int node()
  {
    skip();
    std::size_t b = _p;
    while (_p < _s.size() && std::isdigit((unsigned char)_s[_p]))
      ++_p;
    if (b == _p)
      fail("expected a node number");
    int i = std::stoi(_s.substr(b, _p - b));
    if (i < 1 || i > _rs.rank()) {
      _p = b;
      fail("node " + std::to_string(i) + " out of range");
    }
    return i - 1;
  }

  void factor(Word<F> &word)
  {
    skip();
    if (peek("x[")) {
      _p += 2;
      int r = root();
      expect(']');
      expect('(');
      F a = scalar(')');
      expect(')');
      word.push_back(Token<F>::x(r, a));
    } else if (peek("n[")) {
      _p += 2;
      int r = root();
      expect(']');
      F c = F::from_int(1);
      if (peek("(")) {
        ++_p;
        c = scalar(')');
        expect(')');
      }
      if (c.is_zero())
        throw ZeroScalar("n[..](c) needs c != 0");
      word.push_back(Token<F>::nr(r, c));
    } else if (peek("h[")) {
      _p += 2;
      std::vector<std::pair<int, F>> torus;
      for (;;) {
        int i = node();
        expect(':');
        std::size_t at = _p;
        auto e = _s.find_first_of(",]", _p);
        if (e == std::string::npos)
          fail("missing ']'");
        std::string t = _s.substr(_p, e - _p);
        _p = e;
        F c;
        try {
          c = F::parse(t);
        } catch (ParseError const &err) {
          _p = at;
          fail(err.what());
        }
        if (c.is_zero())
          throw ZeroScalar("torus scalar must be nonzero");
        torus.emplace_back(i, c);
        skip();
        if (peek(",")) {
          ++_p;
          continue;
        }
        expect(']');
        break;
      }
      word.push_back(Token<F>::h(torus));
    } else if (peek("w0")) {
      _p += 2;
      word.push_back(Token<F>::w0());
    } else if (peek("wP[")) {
      _p += 3;
      NodeSet J = 0;
      skip();
      while (_p < _s.size() && _s[_p] != ']') {
        if (_s[_p] == ',' || std::isspace((unsigned char)_s[_p])) {
          ++_p;
          continue;
        }
        if (!std::isdigit((unsigned char)_s[_p]))
          fail("expected a node number");
        int i = _s[_p] - '0';
        if (i < 1 || i > _rs.rank())
          fail("node " + std::to_string(i) + " out of range");
        J |= node_bit(i - 1);
        ++_p;
      }
      expect(']');
      word.push_back(Token<F>::wj(J));
    } else if (peek("s")) {
      ++_p;
      word.push_back(Token<F>::n(node()));
    } else {
      fail("unexpected input");
    }
  }
};

template<typename F>
Word<F> parse_element(RootSystem const &rs, std::string const &text)
{ return ElementParser<F>(rs, text).parse(); }

template<typename F>
std::string format_root(RootSystem const &rs, int r)
{
  return rs.positive(r) ? rs.str(r) : "-" + rs.str(rs.neg(r));
}

template<typename F>
std::string print_element(RootSystem const &rs, Word<F> const &word)
{
  if (word.empty())
    return "1";
  std::string s;
  for (auto const &t : word) {
    if (!s.empty())
      s += "*";
    switch (t.kind) {
      case TokenKind::X:
        s += "x[" + format_root<F>(rs, t.root) + "](" + t.scalar.str() + ")";
        break;
      case TokenKind::N:
        s += "s" + std::to_string(t.node + 1);
        break;
      case TokenKind::NR:
        s += "n[" + format_root<F>(rs, t.root) + "]";
        if (!t.scalar.is_one())
          s += "(" + t.scalar.str() + ")";
        break;
      case TokenKind::H: {
        s += "h[";
        bool first = true;
        for (auto const &[i, c] : t.torus) {
          s += (first ? "" : ",") + std::to_string(i + 1) + ":" + c.str();
          first = false;
        }
        s += "]";
        break;
      }
      case TokenKind::W0:
        s += "w0";
        break;
      case TokenKind::WJ: {
        s += "wP[";
        for (int i : node_list(t.nodes))
          s += std::to_string(i + 1);
        s += "]";
        break;
      }
    }
  }
  return s;
}

} // namespace chev

#endif // GUARD_CHEV_PARSE_H
