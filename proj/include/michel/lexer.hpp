#ifndef MICHEL_LEXER_HPP
#define MICHEL_LEXER_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "michel/ast.hpp"
#include "michel/errors.hpp"
#include "michel/value.hpp"

namespace michel {

enum class TokKind : std::uint8_t {
  Ident,
  Int,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Semi,
  Colon,
  Comma,
  Pipe,
  Dot,
  Equal,
  Plus,
  GreaterEq,
  Arrow,
  End,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;  // Ident name or String contents (unescaped)
  BigInt num;        // Int payload
  Pos pos;
};

// `.tz` sources lex annotations (@x, %x, :x) away; `.alb` sources use the
// punctuation tokens instead.
enum class LexMode { Michelson, Albert };

inline std::vector<Token> lex(std::string_view src, LexMode mode) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;

  auto cur_pos = [&] { return Pos{line, col}; };
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto push = [&](TokKind k, Pos p) {
    Token t;
    t.kind = k;
    t.pos = p;
    out.push_back(std::move(t));
  };

  while (i < src.size()) {
    char c = src[i];
    Pos p = cur_pos();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (mode == LexMode::Michelson && (c == '@' || c == '%' ||
                                       (c == ':' && i + 1 < src.size() &&
                                        (std::isalpha(static_cast<unsigned char>(src[i + 1])) ||
                                         src[i + 1] == '_')))) {
      // annotation: lexed and discarded
      advance();
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                src[i] == '_' || src[i] == '.')) {
        advance();
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                src[i] == '_')) {
        name += src[i];
        advance();
      }
      Token t;
      t.kind = TokKind::Ident;
      t.text = std::move(name);
      t.pos = p;
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::string digits;
      if (c == '-') {
        digits += '-';
        advance();
      }
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        digits += src[i];
        advance();
      }
      Token t;
      t.kind = TokKind::Int;
      t.num = BigInt(digits);
      t.pos = p;
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      advance();
      std::string contents;
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          advance();
          closed = true;
          break;
        }
        if (d == '\\') {
          advance();
          if (i >= src.size()) break;
          char e = src[i];
          advance();
          switch (e) {
            case 'n': contents += '\n'; break;
            case 'r': contents += '\r'; break;
            case 't': contents += '\t'; break;
            case '\\': contents += '\\'; break;
            case '"': contents += '"'; break;
            default:
              throw ParseError(std::string("unknown escape \\") + e, p);
          }
          continue;
        }
        if (d == '\n') throw ParseError("unterminated string literal", p);
        contents += d;
        advance();
      }
      if (!closed) throw ParseError("unterminated string literal", p);
      Token t;
      t.kind = TokKind::String;
      t.text = std::move(contents);
      t.pos = p;
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '{': advance(); push(TokKind::LBrace, p); continue;
      case '}': advance(); push(TokKind::RBrace, p); continue;
      case '(': advance(); push(TokKind::LParen, p); continue;
      case ')': advance(); push(TokKind::RParen, p); continue;
      case '[': advance(); push(TokKind::LBracket, p); continue;
      case ']': advance(); push(TokKind::RBracket, p); continue;
      case ';': advance(); push(TokKind::Semi, p); continue;
      default: break;
    }
    if (mode == LexMode::Albert) {
      switch (c) {
        case ':': advance(); push(TokKind::Colon, p); continue;
        case ',': advance(); push(TokKind::Comma, p); continue;
        case '|': advance(); push(TokKind::Pipe, p); continue;
        case '.': advance(); push(TokKind::Dot, p); continue;
        case '+': advance(); push(TokKind::Plus, p); continue;
        case '=': advance(); push(TokKind::Equal, p); continue;
        case '>':
          advance();
          if (i < src.size() && src[i] == '=') {
            advance();
            push(TokKind::GreaterEq, p);
            continue;
          }
          throw ParseError("unexpected character '>'", p);
        case '-':
          advance();
          if (i < src.size() && src[i] == '>') {
            advance();
            push(TokKind::Arrow, p);
            continue;
          }
          throw ParseError("unexpected character '-'", p);
        default: break;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", p);
  }
  Token end;
  end.kind = TokKind::End;
  end.pos = cur_pos();
  out.push_back(std::move(end));
  return out;
}

}  // namespace michel

#endif  // MICHEL_LEXER_HPP
