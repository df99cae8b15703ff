#include "doctest.h"

#include "bsw/construct.hpp"

#include <boost/integer/common_factor.hpp>

#include <random>

using namespace bsw;

namespace {

  Word w(std::string const& s, Tower const& t) {
    return parse_word(s, t.names());
  }

  Tower abelian_fixture() {
    Tower t = new_tower(2);
    t       = glue_abelian_flat(t, {w("e1^2*e2^2", t), 2, {}, ""});
    t       = glue_surface_flat(t, {1, {w("z1*e1*z1^-1*e1^-1", t)}, {w("z1", t), w("e1", t)}});
    return t;
  }

  Tower nonabelian_fixture() {
    Tower t = new_tower(2);
    t       = glue_surface_flat(t, {1, {w("e1*e2*e1^-1*e2^-1", t)}, {w("e1", t), w("e2", t)}});
    t       = glue_abelian_flat(t, {w("x1^3*x2^4", t), 2, {}, ""});
    return t;
  }

  Tower closure_fixture() {
    Tower t = new_tower(2);
    return glue_abelian_flat(t, {w("e1", t), 1, {"z"}, "C"});
  }

  ClosureEmbedding embedding(std::vector<long long> peg, IntMatrix K) {
    IntVec p(peg.begin(), peg.end());
    return {p, K};
  }

  std::vector<Word> all_words(std::size_t rank, std::size_t maxlen) {
    std::vector<Word> out{Word()};
    std::vector<Word> layer{Word()};
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::vector<Word> next;
      for (auto const& u : layer) {
        for (int g = 0; g < static_cast<int>(rank); ++g) {
          for (int s : {1, -1}) {
            Word x = u * Word(std::vector<Letter>{letter(g, s)});
            if (x.size() == len) {
              next.push_back(x);
            }
          }
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  bool all_killed(Morphism const& m, Presentation const& p) {
    for (auto const& r : p.relators) {
      if (!m(r).empty()) {
        return false;
      }
    }
    return true;
  }

  GogVertex vertex(int id, std::string const& p) {
    return {id, parse_presentation(p)};
  }

  Word in(GogVertex const& v, std::string const& s) {
    return parse_word(s, v.group.generators);
  }

  GogEdge edge(int id, GogVertex const& from, std::string const& fw, GogVertex const& to,
               std::string const& tw) {
    return {id, from.id, to.id, 1, {in(from, fw)}, {in(to, tw)}};
  }

  std::map<std::string, Word> eta_of(Basis const& L, std::map<std::string, std::string> const& m) {
    std::map<std::string, Word> out;
    for (auto const& [k, v] : m) {
      out[k] = parse_word(v, L);
    }
    return out;
  }

  // Triviality in G and of the image in Comp agree on every short word.
  void check_injective(Gad const& gad, CompletionResult const& c, std::size_t len) {
    auto d = gog_decider(gad.gog, c.fp);
    REQUIRE(d);
    std::size_t unknown = 0;
    for (auto const& u : all_words(c.fp.presentation.generators.rank(), len)) {
      Tri src = d->decide(d->to_structure(u));
      Tri img = decide_trivial(c.comp.structure(), c.embedding(u), false).status;
      REQUIRE(src != Tri::Unknown);
      if (img == Tri::Unknown) {
        ++unknown;
        continue;
      }
      CHECK_MESSAGE(src == img, format_word(u, c.fp.presentation.generators));
    }
    CHECK(unknown == 0);
  }

}  // namespace

TEST_CASE("floor double of the abelian example") {
  Tower t = abelian_fixture();
  auto  d = floor_double(t, 1, {{"z1'", "y1"}, {"z2'", "y2"}});
  CHECK(format_presentation(d.tower.presentation_at(1))
        == "< e1 e2 z1 z2 y1 y2 | z1*z2*z1^-1*z2^-1, z1*y1*z1^-1*y1^-1, z1*y2*z1^-1*y2^-1, "
           "z2*y1*z2^-1*y1^-1, z2*y2*z2^-1*y2^-1, y1*y2*y1^-1*y2^-1, "
           "z1*e1^2*e2^2*z1^-1*e2^-2*e1^-2, z2*e1^2*e2^2*z2^-1*e2^-2*e1^-2, "
           "y1*e1^2*e2^2*y1^-1*e2^-2*e1^-2, y2*e1^2*e2^2*y2^-1*e2^-2*e1^-2 >");
  CHECK(d.tower.floors()[0].flats[0].rank == 4);
  CHECK(d.pairs.at("z2") == "y2");
  // f2 fixes the base, in particular the peg
  Word peg = w("e1^2*e2^2", t);
  CHECK(d.f2(peg) == peg);
  CHECK(format_word(d.f2(w("z1", t)), d.tower.names()) == "y1");
  CHECK(validate_tower(d.tower).overall() == Tri::Yes);

  Tower r1 = new_tower(1);
  r1       = glue_abelian_flat(r1, {w("e1", r1), 1, {}, ""});
  CHECK(floor_double(r1, 1).tower.floors()[0].flats[0].rank == 2);
  CHECK_THROWS_AS(floor_double(nonabelian_fixture(), 1), TowerError);
  CHECK_THROWS_AS(floor_double(t, 3), std::out_of_range);
}

TEST_CASE("double embeddings preserve relators") {
  Tower t = abelian_fixture();
  auto  d = floor_double(t, 1);
  auto  s = d.tower.structure_at(1);
  for (auto const* m : {&d.f1, &d.f2}) {
    for (auto const& r : t.presentation_at(1).relators) {
      CHECK(decide_trivial(s, (*m)(r), false).status == Tri::Yes);
    }
  }
  // injective on short words
  auto src = t.structure_at(1);
  for (auto const& u : all_words(4, 3)) {
    Tri a = decide_trivial(src, u, false).status;
    for (auto const* m : {&d.f1, &d.f2}) {
      CHECK(decide_trivial(s, (*m)(u), false).status == a);
    }
  }
}

TEST_CASE("twin tower, non-abelian case") {
  Tower t  = nonabelian_fixture();
  auto  tt = twin_tower(t, {{"x1'", "y1"}, {"x2'", "y2"}});
  CHECK(tt.kind == TwinCase::NonAbelian);
  REQUIRE(tt.result.height() == 4);
  auto const& R = tt.result;
  CHECK(format_presentation(R.presentation())
        == "< e1 e2 x1 x2 z1 z2 y1 y2 z1' z2' | x1*x2*x1^-1*x2^-1*e2*e1*e2^-1*e1^-1, "
           "z1*z2*z1^-1*z2^-1, z1*x1^3*x2^4*z1^-1*x2^-4*x1^-3, z2*x1^3*x2^4*z2^-1*x2^-4*x1^-3, "
           "y1*y2*y1^-1*y2^-1*e2*e1*e2^-1*e1^-1, z1'*z2'*z1'^-1*z2'^-1, "
           "z1'*y1^3*y2^4*z1'^-1*y2^-4*y1^-3, z2'*y1^3*y2^4*z2'^-1*y2^-4*y1^-3 >");
  CHECK(format_word(R.floors()[3].flats[0].peg, R.names()) == "y1^3*y2^4");
  CHECK(tt.twin_map.at("F1") == "F1'");
  CHECK(tt.twin_map.at("F2'") == "F2");
  CHECK(tt.report.overall() == Tri::Yes);

  SUBCASE("restrictions reproduce G and its copy") {
    std::size_t       n = tt.original_rank;
    std::vector<Word> lower, upper;
    for (auto const& r : R.presentation().relators) {
      (r.uses_only_below(static_cast<int>(n)) ? lower : upper).push_back(r);
    }
    CHECK(lower == t.presentation().relators);
    std::vector<Word> back;
    for (auto const& r : upper) {
      back.push_back(tt.swap(r));
    }
    CHECK(back == t.presentation().relators);
  }
  SUBCASE("swap is an involution") {
    for (std::size_t g = 0; g < R.names().rank(); ++g) {
      Word x = Word::gen(static_cast<int>(g));
      CHECK(tt.swap(tt.swap(x)) == x);
    }
    CHECK(tt.swap(w("e2", t)) == w("e2", t));
  }
  SUBCASE("both orderings are legitimate") {
    CHECK(check_legitimate_ordering(R, tt.ordering).legitimate);
    CHECK(check_legitimate_ordering(R, tt.twin_ordering).legitimate);
    CHECK(tt.twin_ordering == std::vector<std::size_t>{2, 3, 0, 1});
  }
}

TEST_CASE("twin tower, abelian case") {
  Tower t  = abelian_fixture();
  auto  tt = twin_tower(t, {{"z1'", "y1"}, {"z2'", "y2"}, {"x1'", "p1"}, {"x2'", "p2"}});
  CHECK(tt.kind == TwinCase::Abelian);
  REQUIRE(tt.result.height() == 3);
  CHECK(format_presentation(tt.result.presentation())
        == "< e1 e2 z1 z2 y1 y2 x1 x2 p1 p2 | z1*z2*z1^-1*z2^-1, z1*y1*z1^-1*y1^-1, "
           "z1*y2*z1^-1*y2^-1, z2*y1*z2^-1*y1^-1, z2*y2*z2^-1*y2^-1, y1*y2*y1^-1*y2^-1, "
           "z1*e1^2*e2^2*z1^-1*e2^-2*e1^-2, z2*e1^2*e2^2*z2^-1*e2^-2*e1^-2, "
           "y1*e1^2*e2^2*y1^-1*e2^-2*e1^-2, y2*e1^2*e2^2*y2^-1*e2^-2*e1^-2, "
           "x1*x2*x1^-1*x2^-1*e1*z1*e1^-1*z1^-1, p1*p2*p1^-1*p2^-1*e1*y1*e1^-1*y1^-1 >");
  CHECK(tt.twin_map.size() == 2);
  CHECK(tt.twin_map.at("F2") == "F2'");
  auto const& R = tt.result;
  CHECK(format_word(tt.swap(w("z1", t)), R.names()) == "y1");
  CHECK(format_word(tt.swap(parse_word("p2", R.names())), R.names()) == "x2");
  CHECK(check_legitimate_ordering(R, tt.ordering).legitimate);
  CHECK(check_legitimate_ordering(R, tt.twin_ordering).legitimate);
  // retraction of the copy: p1 -> y1 -> peg
  auto rho = R.to_base();
  CHECK(format_word(rho(parse_word("p1", R.names())), R.base()) == "e1^2*e2^2");
  CHECK(format_word(rho(parse_word("p2", R.names())), R.base()) == "e1");
}

TEST_CASE("twin tower edge cases") {
  auto tt = twin_tower(new_tower(2));
  CHECK(tt.result.height() == 0);
  CHECK(tt.twin_map.empty());
  // a first floor mixing a surface and an abelian flat
  Tower t   = new_tower(4);
  auto  s   = make_surface_flat(t, {1, {w("e1*e2*e1^-1*e2^-1", t)}, {w("e1", t), w("e2", t)}});
  auto  a   = make_abelian_flat(t, {w("e3", t), 1, {}, ""});
  a.id      = "A";
  Tower mix = glue_floor(t, {s, a});
  CHECK_THROWS_AS(twin_tower(mix), TowerError);
  // a renaming that collides
  CHECK_THROWS_AS(twin_tower(nonabelian_fixture(), {{"x1'", "e1"}}), TowerError);
}

TEST_CASE("closure example") {
  Tower t  = closure_fixture();
  auto  f  = embedding({2}, IntMatrix{{3}});
  Tower cl = tower_closure(t, {{"C", {f, {"a"}, {}}}});
  CHECK(format_presentation(cl.presentation())
        == "< e1 e2 z a | z*a*z^-1*a^-1, z*e1*z^-1*e1^-1, a*e1*a^-1*e1^-1, z*a^-3*e1^-2 >");
  CHECK(validate_tower(cl).overall() == Tri::Yes);
  auto inc = closure_inclusion(t, cl);
  CHECK(format_word(inc(w("z", t)), cl.names()) == "z");

  // z -> e1^p extends iff some a -> e1^y kills the closure relators
  for (long long p = -9; p <= 9; ++p) {
    auto ext   = extension_test(f, {p});
    bool brute = false;
    for (long long y = -10; y <= 10 && !brute; ++y) {
      Morphism m(2, {Word::gen(0), Word::gen(1), Word::gen(0).pow(p), Word::gen(0).pow(y)});
      brute = all_killed(m, cl.presentation());
      if (brute && ext.y) {
        CHECK((*ext.y)[0] == y);
      }
    }
    CHECK_MESSAGE(ext.extends == brute, p);
    CHECK(ext.coset.contains({p}) == brute);
  }
  CHECK(to_string(extension_test(f, {4}).coset) == "2+3ℤ");

  CHECK_THROWS_AS(tower_closure(t, {{"C", {embedding({1}, IntMatrix{{0}}), {}, {}}}}), TowerError);
  CHECK_THROWS_AS(tower_closure(cl, {{"C", {f, {}, {}}}}), TowerError);
  CHECK_THROWS_AS(tower_closure(t, {{"missing", {f, {}, {}}}}), TowerError);
}

TEST_CASE("closure with identity and diagonal embeddings") {
  Tower t = new_tower(2);
  t       = glue_abelian_flat(t, {w("e1", t), 2, {}, "C"});
  SUBCASE("identity") {
    Tower cl = tower_closure(t, {{"C", {embedding({0, 0}, IntMatrix::identity(2)), {}, {}}}});
    // z_i = a_i, so dropping the a's recovers t
    auto  e = eliminate_identifications(cl.presentation());
    CHECK(e.result.generators.rank() == t.names().rank());
  }
  SUBCASE("diag(2,3)") {
    auto  f  = embedding({0, 0}, IntMatrix{{2, 0}, {0, 3}});
    Tower cl = tower_closure(t, {{"C", {f, {}, {}}}});
    auto  rels = cl.presentation().relators;
    CHECK(format_word(rels[rels.size() - 2], cl.names()) == "z1*a1^-2");
    CHECK(format_word(rels.back(), cl.names()) == "z2*a2^-3");
    for (long long p1 = -6; p1 <= 6; ++p1) {
      for (long long p2 = -6; p2 <= 6; ++p2) {
        bool brute = p1 % 2 == 0 && p2 % 3 == 0;
        CHECK(extension_test(f, {p1, p2}).extends == brute);
      }
    }
  }
}

TEST_CASE("symmetric closure") {
  Tower t = new_tower(2);
  t       = glue_surface_flat(t, {1, {w("e1*e2*e1^-1*e2^-1", t)}, {w("e1", t), w("e2", t)}});
  t       = glue_abelian_flat(t, {w("x1", t), 1, {}, "C"});
  auto tt = twin_tower(t);
  REQUIRE(tt.twin_map.at("C") == "C'");

  auto f    = embedding({0}, IntMatrix{{2}});
  auto fhat = embedding({0}, IntMatrix{{3}});
  auto sc   = symmetric_closure(tt, {{"C", {f, {"s"}, {}}}, {"C'", {fhat, {"q"}, {}}}});
  REQUIRE(sc.pairs.size() == 1);
  auto const& p = sc.pairs[0];
  CHECK(p.coset.lattice == Lattice(IntMatrix{{6}}));
  CHECK(p.coset.lattice == p.coset_hat.lattice);
  CHECK(p.f.K == IntMatrix{{6}});
  auto rels = sc.tower.presentation().relators;
  std::vector<std::string> shown;
  for (auto const& r : rels) {
    shown.push_back(format_word(r, sc.tower.names()));
  }
  CHECK(std::count(shown.begin(), shown.end(), "z1*s^-6") == 1);
  CHECK(std::count(shown.begin(), shown.end(), "z1'*q^-6") == 1);
  CHECK(validate_tower(sc.tower).overall() == Tri::Yes);

  // equal embeddings leave U alone
  auto same = symmetrize(f, f);
  CHECK(same.coset.lattice == Lattice(IntMatrix{{2}}));

  CHECK_THROWS_AS(symmetric_closure(tt, {{"C", {f, {}, {}}}}), std::invalid_argument);

  std::mt19937                          rng(5);
  std::uniform_int_distribution<int>    ex(1, 12), off(-20, 20);
  for (int k = 0; k < 100; ++k) {
    long long j = ex(rng), l = ex(rng);
    long long a = off(rng), b = off(rng);
    auto      s = symmetrize(embedding({a}, IntMatrix{{j}}), embedding({b}, IntMatrix{{l}}));
    Int       m = boost::integer::lcm(j, l);
    CHECK(s.coset.lattice.basis()(0, 0) == m);
    CHECK(s.coset_hat.lattice == s.coset.lattice);
    // offsets stay in their original classes
    CHECK(floor_mod(s.coset.offset[0] - a, Int(j)) == 0);
    CHECK(floor_mod(s.coset_hat.offset[0] - b, Int(l)) == 0);
  }
}

TEST_CASE("symmetric closure, rank 2") {
  std::mt19937                       rng(9);
  std::uniform_int_distribution<int> e(-4, 4);
  int                                done = 0;
  while (done < 100) {
    IntMatrix K{{e(rng), e(rng)}, {e(rng), e(rng)}};
    IntMatrix Kh{{e(rng), e(rng)}, {e(rng), e(rng)}};
    if (determinant(K) == 0 || determinant(Kh) == 0) {
      continue;
    }
    ++done;
    auto s = symmetrize(embedding({e(rng), e(rng)}, K), embedding({e(rng), e(rng)}, Kh));
    CHECK(s.coset.lattice == s.coset_hat.lattice);
    // brute force: v lies in U iff it lies in both column lattices
    Lattice a(K), b(Kh);
    for (long long x = -6; x <= 6; ++x) {
      for (long long y = -6; y <= 6; ++y) {
        IntVec v{x, y};
        CHECK(s.coset.lattice.contains(v) == (a.contains(v) && b.contains(v)));
      }
    }
  }
}

TEST_CASE("completion, single rigid vertex") {
  auto  v = vertex(0, "< e1 e2 | >");
  Gad   gad{GraphOfGroups({v}, {}), {{0, VertexType::Rigid}}, {}};
  Basis L({"e1", "e2"});
  auto  c = completion(gad, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}}), L);
  CHECK(c.comp.height() == 0);
  CHECK(c.steps.empty());
  CHECK(c.embedding.images() == std::vector<Word>{Word::gen(0), Word::gen(1)});
  CHECK(c.check.status == MorphismCheck::Status::Pass);
}

TEST_CASE("completion, abelian leaf") {
  auto  r = vertex(0, "< e1 e2 | >");
  auto  a = vertex(1, "< c1 c2 | c1*c2*c1^-1*c2^-1 >");
  Gad   gad{GraphOfGroups({r, a}, {edge(0, r, "e1", a, "c1")}),
          {{0, VertexType::Rigid}, {1, VertexType::Abelian}},
          {}};
  Basis L({"e1", "e2"});
  auto  c = completion(gad, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}, {"c1", "e1"}, {"c2", ""}}), L);
  REQUIRE(c.steps.size() == 1);
  CHECK(c.steps[0].kind == "2A");
  CHECK(format_presentation(c.comp.presentation()) == "< e1 e2 z1 | z1*e1*z1^-1*e1^-1 >");
  auto const& fpn = c.fp.presentation.generators;
  CHECK(format_word(c.embedding(parse_word("c1", fpn)), c.comp.names()) == "e1");
  CHECK(format_word(c.embedding(parse_word("c2", fpn)), c.comp.names()) == "z1");
  CHECK(c.check.status == MorphismCheck::Status::Pass);
  check_injective(gad, c, 4);
}

TEST_CASE("completion, surface vertex") {
  auto  r = vertex(0, "< e1 e2 | >");
  auto  s = vertex(1, "< x1 x2 | >");
  Gad   gad{GraphOfGroups({r, s}, {edge(0, r, "e1*e2*e1^-1*e2^-1", s, "x1*x2*x1^-1*x2^-1")}),
          {{0, VertexType::Rigid}, {1, VertexType::Surface}},
          {{1, SurfaceData{1, {in(s, "x1*x2*x1^-1*x2^-1")}}}}};
  Basis L({"e1", "e2"});
  auto  c = completion(gad, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}, {"x1", "e1"}, {"x2", "e2"}}), L);
  REQUIRE(c.steps.size() == 1);
  CHECK(c.steps[0].kind == "3A");
  CHECK(format_presentation(c.comp.presentation())
        == "< e1 e2 x1' x2' | x1'*x2'*x1'^-1*x2'^-1*e2*e1*e2^-1*e1^-1 >");
  auto const& fpn = c.fp.presentation.generators;
  CHECK(format_word(c.embedding(parse_word("x2", fpn)), c.comp.names()) == "x2'");
  CHECK(c.check.status == MorphismCheck::Status::Pass);
  check_injective(gad, c, 4);
}

TEST_CASE("completion, rigid vertices") {
  Basis L({"e1", "e2"});
  SUBCASE("amalgam") {
    auto a = vertex(0, "< a b | >");
    auto b = vertex(1, "< c d | >");
    Gad  gad{GraphOfGroups({a, b}, {edge(0, a, "a", b, "c")}),
            {{0, VertexType::Rigid}, {1, VertexType::Rigid}},
            {}};
    auto c = completion(gad, eta_of(L, {{"a", "e1"}, {"b", "e2"}, {"c", "e1"}, {"d", "e2"}}), L);
    CHECK(c.steps[0].kind == "1A");
    CHECK(format_word(c.gamma.at(1), c.comp.names()) == "z1");
    auto const& fpn = c.fp.presentation.generators;
    CHECK(format_word(c.embedding(parse_word("d", fpn)), c.comp.names()) == "z1*e2*z1^-1");
    check_injective(gad, c, 4);
  }
  SUBCASE("hnn") {
    auto v   = vertex(0, "< a b | >");
    Gad  gad{GraphOfGroups({v}, {edge(3, v, "a", v, "b*a*b^-1")}), {{0, VertexType::Rigid}}, {}};
    auto c   = completion(gad, eta_of(L, {{"a", "e1"}, {"b", "e2"}, {"t_3", "e2"}}), L);
    CHECK(c.steps[0].kind == "1A");
    auto const& fpn = c.fp.presentation.generators;
    CHECK(format_word(c.embedding(parse_word("t_3", fpn)), c.comp.names()) == "e2*z1");
    check_injective(gad, c, 3);
  }
  SUBCASE("second edge on a conjugate peg") {
    auto a = vertex(0, "< a b | >");
    auto b = vertex(1, "< c d | >");
    auto e = vertex(2, "< g h | >");
    Gad  gad{GraphOfGroups({a, b, e}, {edge(0, a, "a", b, "c"), edge(1, a, "b*a*b^-1", e, "g")}),
            {{0, VertexType::Rigid}, {1, VertexType::Rigid}, {2, VertexType::Rigid}},
            {}};
    auto c = completion(gad,
                        eta_of(L, {{"a", "e1"}, {"b", "e2"}, {"c", "e1"}, {"d", "e2"},
                                   {"g", "e2*e1*e2^-1"}, {"h", "e2"}}),
                        L);
    REQUIRE(c.steps.size() == 2);
    CHECK(c.steps[1].kind == "1B");
    CHECK(c.comp.floors()[0].flats.size() == 1);
    CHECK(c.comp.floors()[0].flats[0].rank == 2);
    CHECK(c.check.status == MorphismCheck::Status::Pass);
  }
}

TEST_CASE("completion rejects bad input") {
  Basis L({"e1", "e2"});
  auto  r = vertex(0, "< e1 e2 | >");
  auto  a = vertex(1, "< c1 c2 | c1*c2*c1^-1*c2^-1 >");
  Gad   gad{GraphOfGroups({r, a}, {edge(0, r, "e1", a, "c1^2*c2^2")}),
          {{0, VertexType::Rigid}, {1, VertexType::Abelian}},
          {}};
  // no coordinate +-1
  CHECK_THROWS_AS(completion(gad, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}, {"c1", "e1"}, {"c2", ""}}), L),
                  std::invalid_argument);
  Gad ok{GraphOfGroups({r, a}, {edge(0, r, "e1", a, "c1")}),
         {{0, VertexType::Rigid}, {1, VertexType::Abelian}},
         {}};
  // eta misses a generator, or is not a homomorphism
  CHECK_THROWS_AS(completion(ok, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}, {"c1", "e1"}}), L),
                  std::invalid_argument);
  CHECK_THROWS_AS(completion(ok, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}, {"c1", "e2"}, {"c2", ""}}), L),
                  std::invalid_argument);
  CHECK_THROWS_AS(completion(ok, eta_of(L, {{"e1", "e1"}, {"e2", "e2"}, {"c1", "e1"}, {"c2", ""}}), L,
                             Filtration{1, {0}}),
                  std::invalid_argument);
  auto f = default_filtration(ok);
  CHECK(f.root == 0);
  CHECK(f.edges == std::vector<int>{0});
}
