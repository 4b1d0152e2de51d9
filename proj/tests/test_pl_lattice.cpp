#include <gtest/gtest.h>

#include <random>

#include <stokes_euler/euler_matrix.hpp>
#include <stokes_euler/search.hpp>

#include "oracles.hpp"

using namespace stokes_euler;

namespace {

const IntMatrix kA2Gram{{-2, 1}, {1, -2}};

std::vector<BigInt> poly(std::initializer_list<long long> c) {
  std::vector<BigInt> out;
  for (auto x : c) out.emplace_back(x);
  return out;
}

IntMatrix chi_of(int a, int b, int c) { return canonical_collection_euler_matrix(make_orbifold(a, b, c)).chi; }

}  // namespace

TEST(Reflection, Basics) {
  const MilnorLattice L{kA2Gram};
  EXPECT_EQ(pl_reflection(L, {1, 0}, {0, 1}), (LatticeVector{1, 1}));
  EXPECT_EQ(pl_reflection(L, {1, 0}, {1, 0}), (LatticeVector{-1, 0}));
  const MilnorLattice D{IntMatrix{{-2, 0}, {0, -2}}};
  EXPECT_EQ(pl_reflection(D, {1, 0}, {0, 3}), (LatticeVector{0, 3}));
}

TEST(Reflection, IsometryOnRandomVectors) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  for (auto t : oracle::test_set()) {
    const IntMatrix chi = chi_of(t[0], t[1], t[2]);
    const MilnorLattice L = gram_from_stokes(chi);
    const auto basis = DistinguishedBasis::standard(L);
    for (int trial = 0; trial < 1000; ++trial) {
      LatticeVector x(L.rank()), y(L.rank());
      for (auto& v : x) v = d(rng);
      for (auto& v : y) v = d(rng);
      const auto& v = basis.vectors[static_cast<std::size_t>(trial) % L.rank()];
      EXPECT_EQ(L.pairing(pl_reflection(L, v, x), pl_reflection(L, v, y)), L.pairing(x, y));
    }
  }
}

TEST(Dictionary, StokesFromGram) {
  EXPECT_EQ(stokes_from_gram(kA2Gram), (IntMatrix{{1, -1}, {0, 1}}));
  EXPECT_EQ(stokes_from_gram(IntMatrix{{-2}}), (IntMatrix{{1}}));
  EXPECT_EQ(stokes_from_gram(IntMatrix{{-2, 0, 0}, {0, -2, 0}, {0, 0, -2}}), IntMatrix::identity(3));
  EXPECT_EQ(gram_from_stokes(IntMatrix{{1, -1}, {0, 1}}).gram, kA2Gram);
  EXPECT_EQ(gram_from_stokes(IntMatrix{{1, 2}, {0, 1}}).gram, (IntMatrix{{-2, -2}, {-2, -2}}));
  EXPECT_EQ(gram_from_stokes(IntMatrix::identity(4)).gram, -(IntMatrix::identity(4) + IntMatrix::identity(4)));
}

TEST(Dictionary, RoundTripsAndLeftExpansion) {
  for (auto t : oracle::test_set()) {
    const IntMatrix chi = chi_of(t[0], t[1], t[2]);
    const auto L = gram_from_stokes(chi);
    L.validate();
    EXPECT_EQ(stokes_from_gram(L.gram), chi);
    const auto basis = DistinguishedBasis::standard(L);
    EXPECT_EQ(gram_from_stokes(stokes_from_gram(basis)).gram, basis.tuple_gram());
    EXPECT_EQ(left_basis_expansion(basis), stokes_from_gram(basis));
    // a moved basis too
    const auto moved = braid_move(sign_flip(braid_move(basis, 1), 2), L.rank() - 1, false);
    EXPECT_EQ(left_basis_expansion(moved), stokes_from_gram(moved));
  }
  const auto a2 = DistinguishedBasis::standard(MilnorLattice{kA2Gram});
  EXPECT_EQ(left_basis_expansion(a2), (IntMatrix{{1, -1}, {0, 1}}));
}

TEST(Moves, A2Examples) {
  const auto a2 = DistinguishedBasis::standard(MilnorLattice{kA2Gram});
  const auto r = braid_move(a2, 1);
  EXPECT_EQ(r.vectors[0], (LatticeVector{1, 1}));
  EXPECT_EQ(r.vectors[1], (LatticeVector{1, 0}));
  EXPECT_EQ(stokes_from_gram(r), (IntMatrix{{1, 1}, {0, 1}}));
  EXPECT_EQ(braid_move(r, 1, false).vectors, a2.vectors);
  EXPECT_EQ(sign_stokes(IntMatrix{{1, -1}, {0, 1}}, 1), (IntMatrix{{1, 1}, {0, 1}}));
  EXPECT_THROW(braid_move(a2, 2), Error);
  EXPECT_THROW(braid_move(a2, 0), Error);
}

TEST(Moves, GramUpdateMatchesBasisAction) {
  const IntMatrix chi = chi_of(2, 3, 4);
  const auto basis = DistinguishedBasis::standard(gram_from_stokes(chi));
  std::mt19937_64 rng(5);
  auto b = basis;
  IntMatrix s = chi;
  for (int step = 0; step < 40; ++step) {
    const std::size_t k = 1 + rng() % (b.size() - 1);
    const int kind = static_cast<int>(rng() % 3);
    if (kind == 0) {
      b = braid_move(b, k);
      s = braid_stokes(s, k);
    } else if (kind == 1) {
      b = braid_move(b, k, false);
      s = braid_stokes(s, k, false);
    } else {
      b = sign_flip(b, k);
      s = sign_stokes(s, k);
    }
    b.validate();
    ASSERT_EQ(stokes_from_gram(b), s);
    ASSERT_EQ(determinant(b.tuple_gram()), determinant(basis.tuple_gram()));
  }
}

TEST(Moves, TextRoundTripAndInverse) {
  const auto seq = MoveSequence::parse("b3 s1 B2");
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_EQ(seq.moves[0], Move::braid(3));
  EXPECT_EQ(seq.moves[1], Move::sign(1));
  EXPECT_EQ(seq.moves[2], Move::braid_inverse(2));
  EXPECT_EQ(seq.to_text(), "b3 s1 B2");
  EXPECT_EQ(seq.inverse().to_text(), "b2 s1 B3");
  EXPECT_THROW(MoveSequence::parse("x2"), Error);
  EXPECT_THROW(MoveSequence::parse("b0"), Error);
  const IntMatrix chi = chi_of(1, 2, 3);
  EXPECT_EQ(apply_moves(apply_moves(chi, seq), seq.inverse()), chi);
}

TEST(Coxeter, SmallExamples) {
  const auto a2 = coxeter_invariants(IntMatrix{{1, -1}, {0, 1}});
  EXPECT_EQ(a2.char_poly, poly({1, -1, 1}));
  EXPECT_LT(a2.max_unit_circle_defect(), 1e-12);
  const auto p1 = coxeter_invariants(IntMatrix{{1, 2}, {0, 1}});
  EXPECT_EQ(p1.char_poly, poly({1, 2, 1}));
  ASSERT_EQ(p1.eigenvalues.size(), 2u);
  for (auto z : p1.eigenvalues) EXPECT_LT(std::abs(z + 1.0), 1e-14);
  EXPECT_EQ(coxeter_invariants(IntMatrix::identity(3)).char_poly, poly({1, -3, 3, -1}));
  EXPECT_EQ(a2.poly_text(), "x^2 - x + 1");
}

TEST(Coxeter, InvariantUnderMoves) {
  std::mt19937_64 rng(3);
  for (auto t : oracle::test_set()) {
    const IntMatrix chi = chi_of(t[0], t[1], t[2]);
    const auto base = coxeter_invariants(chi);
    EXPECT_LT(base.max_unit_circle_defect(), 1e-10) << t[0] << t[1] << t[2];
    IntMatrix s = chi;
    for (int step = 0; step < 15; ++step) {
      const std::size_t k = 1 + rng() % (s.rows() - 1);
      s = rng() % 2 ? braid_stokes(s, k) : sign_stokes(s, k);
    }
    EXPECT_EQ(coxeter_invariants(s).char_poly, base.char_poly);
  }
}

TEST(Search, TrivialCases) {
  const IntMatrix s{{1, -1}, {0, 1}};
  const auto same = equivalence_search(s, s);
  EXPECT_TRUE(same.found());
  EXPECT_TRUE(same.moves.empty());
  const auto flip = equivalence_search(s, IntMatrix{{1, 1}, {0, 1}});
  ASSERT_TRUE(flip.found());
  EXPECT_EQ(flip.moves.size(), 1u);
  EXPECT_EQ(flip.moves.moves[0].kind, Move::Kind::Sign);
  const auto mismatch = equivalence_search(s, IntMatrix{{1, 2}, {0, 1}});
  EXPECT_EQ(mismatch.status, SearchResult::Status::InvariantMismatch);
}

TEST(Search, RecoversScrambledMatrices) {
  std::mt19937_64 rng(17);
  for (auto t : std::vector<std::array<int, 3>>{{1, 1, 1}, {1, 2, 2}, {1, 2, 3}, {2, 2, 2}, {2, 3, 3}}) {
    const IntMatrix chi = chi_of(t[0], t[1], t[2]);
    MoveSequence scramble;
    for (int step = 0; step < 4; ++step) {
      const std::size_t k = 1 + rng() % (chi.rows() - 1);
      scramble.moves.push_back(rng() % 2 ? Move::braid(k) : Move::braid_inverse(k));
      scramble.moves.push_back(Move::sign(1 + rng() % chi.rows()));
    }
    const IntMatrix target = apply_moves(chi, scramble);
    const auto r = equivalence_search(chi, target);
    ASSERT_TRUE(r.found());
    EXPECT_LE(r.depth, 4);
    EXPECT_EQ(apply_moves(chi, r.moves), target);
    // symmetric: the inverse sequence leads back
    EXPECT_EQ(apply_moves(target, r.moves.inverse()), chi);
    const auto back = equivalence_search(target, chi);
    ASSERT_TRUE(back.found());
    EXPECT_EQ(apply_moves(target, back.moves), chi);
  }
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  const IntMatrix chi = chi_of(1, 2, 3);
  const IntMatrix target = apply_moves(chi, MoveSequence::parse("b1 b3 B2 s2 b4"));
  SearchOptions one, four;
  four.threads = 4;
  const auto a = equivalence_search(chi, target, one);
  const auto b = equivalence_search(chi, target, four);
  ASSERT_TRUE(a.found());
  EXPECT_EQ(a.moves, b.moves);
  EXPECT_EQ(a.states, b.states);
}

TEST(Search, InconclusiveIsReportedAsSuch) {
  const IntMatrix chi = chi_of(2, 3, 4);
  const IntMatrix target = apply_moves(chi, MoveSequence::parse("b1 b2 b3 b4 b5 b6 b7 b1 b2"));
  SearchOptions opt;
  opt.max_depth = 2;
  const auto r = equivalence_search(chi, target, opt);
  EXPECT_EQ(r.status, SearchResult::Status::Inconclusive);
}

TEST(Search, ReversalFlag) {
  const IntMatrix s{{1, 1, 0}, {0, 1, 2}, {0, 0, 1}};
  EXPECT_EQ(reverse_stokes(reverse_stokes(s)), s);
  SearchOptions opt;
  opt.allow_reversal = true;
  const auto r = equivalence_search(s, reverse_stokes(s), opt);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(apply_moves(s, r.moves), reverse_stokes(s));
}

TEST(Search, SignCanonicalForm) {
  const IntMatrix s{{1, -1, 2}, {0, 1, -3}, {0, 0, 1}};
  const auto c = sign_canonical(s);
  EXPECT_EQ(sign_canonical(sign_stokes(s, 2)), c);
  EXPECT_EQ(sign_canonical(sign_stokes(sign_stokes(s, 3), 1)), c);
  EXPECT_GT(c(0, 1), 0);
  EXPECT_GT(c(0, 2), 0);
}
