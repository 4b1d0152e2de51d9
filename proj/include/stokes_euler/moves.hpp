#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace stokes_euler {

/// One elementary move on a Stokes-like matrix. Text form: "b3" braid(3),
/// "B3" its inverse, "s1" sign flip of index 1, "r" order reversal.
struct Move {
  enum class Kind { Braid, BraidInverse, Sign, Reversal } kind = Kind::Braid;
  std::size_t k = 1;

  static Move braid(std::size_t k) { return {Kind::Braid, k}; }
  static Move braid_inverse(std::size_t k) { return {Kind::BraidInverse, k}; }
  static Move sign(std::size_t k) { return {Kind::Sign, k}; }
  static Move reversal() { return {Kind::Reversal, 0}; }

  Move inverse() const {
    switch (kind) {
      case Kind::Braid: return braid_inverse(k);
      case Kind::BraidInverse: return braid(k);
      default: return *this;
    }
  }

  std::string to_text() const {
    switch (kind) {
      case Kind::Braid: return "b" + std::to_string(k);
      case Kind::BraidInverse: return "B" + std::to_string(k);
      case Kind::Sign: return "s" + std::to_string(k);
      case Kind::Reversal: return "r";
    }
    return "?";
  }

  static Move parse(const std::string& tok) {
    if (tok == "r") return reversal();
    if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 'B' && tok[0] != 's'))
      fail(ErrorKind::InvalidArgument, "bad move token '" + tok + "'");
    for (std::size_t i = 1; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i]))) fail(ErrorKind::InvalidArgument, "bad move token '" + tok + "'");
    const auto k = static_cast<std::size_t>(std::stoul(tok.substr(1)));
    if (k == 0) fail(ErrorKind::InvalidArgument, "move positions are 1-based");
    if (tok[0] == 'b') return braid(k);
    if (tok[0] == 'B') return braid_inverse(k);
    return sign(k);
  }

  friend bool operator==(const Move&, const Move&) = default;
};

struct MoveSequence {
  std::vector<Move> moves;

  std::size_t size() const noexcept { return moves.size(); }
  bool empty() const noexcept { return moves.empty(); }

  std::size_t braid_count() const {
    std::size_t n = 0;
    for (const auto& m : moves) n += m.kind == Move::Kind::Braid || m.kind == Move::Kind::BraidInverse;
    return n;
  }

  MoveSequence inverse() const {
    MoveSequence inv;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) inv.moves.push_back(it->inverse());
    return inv;
  }

  std::string to_text() const {
    std::string out;
    for (const auto& m : moves) {
      if (!out.empty()) out += ' ';
      out += m.to_text();
    }
    return out;
  }

  static MoveSequence parse(const std::string& text) {
    MoveSequence seq;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) seq.moves.push_back(Move::parse(tok));
    return seq;
  }

  friend bool operator==(const MoveSequence&, const MoveSequence&) = default;
};

/// S -> J S^T J, J the order-reversing permutation.
inline IntMatrix reverse_stokes(const IntMatrix& s) {
  const std::size_t n = s.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = s(n - 1 - j, n - 1 - i);
  return out;
}

inline IntMatrix apply_move(const IntMatrix& s, const Move& m) {
  switch (m.kind) {
    case Move::Kind::Braid: return braid_stokes(s, m.k, true);
    case Move::Kind::BraidInverse: return braid_stokes(s, m.k, false);
    case Move::Kind::Sign: return sign_stokes(s, m.k);
    case Move::Kind::Reversal: return reverse_stokes(s);
  }
  return s;
}

inline IntMatrix apply_moves(IntMatrix s, const MoveSequence& seq) {
  for (const auto& m : seq.moves) s = apply_move(s, m);
  return s;
}

/// Replays braid and sign moves on an actual basis (reversal has no basis meaning).
inline DistinguishedBasis apply_moves(DistinguishedBasis b, const MoveSequence& seq) {
  for (const auto& m : seq.moves) switch (m.kind) {
      case Move::Kind::Braid: b = braid_move(std::move(b), m.k, true); break;
      case Move::Kind::BraidInverse: b = braid_move(std::move(b), m.k, false); break;
      case Move::Kind::Sign: b = sign_flip(std::move(b), m.k); break;
      case Move::Kind::Reversal: fail(ErrorKind::InvalidArgument, "reversal does not act on a basis");
    }
  return b;
}

}  // namespace stokes_euler
