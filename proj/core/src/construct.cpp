#include "bsw/construct.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace bsw {

  std::string twin_name(std::string const& name, NameMap const& rename) {
    std::string n  = name + "'";
    auto        it = rename.find(n);
    return it == rename.end() ? n : it->second;
  }

  std::string to_string(TwinCase c) {
    return c == TwinCase::Abelian ? "abelian" : "non-abelian";
  }

  namespace {

    void throw_on_failure(ValidityReport const& rep) {
      if (auto const* c = rep.first_failure()) {
        throw TowerError(c->name, c->detail);
      }
    }

    // Words of a flat over its lower level, rewritten by m.  m has one extra
    // source slot for the fresh letter.
    Flat translate(Flat f, Morphism const& m) {
      f.peg = m(f.peg);
      for (auto& b : f.boundary) {
        b = m(b);
      }
      for (auto& w : f.images) {
        w = m(w);
      }
      return f;
    }

    Morphism level_map(std::vector<int> const& index, std::size_t old_lower, std::size_t new_lower) {
      std::vector<Word> imgs;
      for (std::size_t g = 0; g < old_lower; ++g) {
        imgs.push_back(Word::gen(index.at(g)));
      }
      imgs.push_back(Word::gen(static_cast<int>(new_lower)));
      return Morphism(new_lower + 1, imgs);
    }

    struct Expansion {
      std::vector<Floor> floors;
      std::vector<int>   index;  // old generator -> new generator
    };

    // Each flat may gain generators after its own; grow returns the new flat
    // with words still over the old indices.
    Expansion expand(Tower const& t, std::function<Flat(FlatRef const&, Flat const&)> const& grow) {
      Expansion out;
      out.index.resize(t.names().rank());
      std::size_t b = t.base().rank();
      for (std::size_t g = 0; g < b; ++g) {
        out.index[g] = static_cast<int>(g);
      }
      std::vector<std::size_t> new_rank{b};
      std::size_t              pos = b;
      auto                     refs = t.flats();
      for (std::size_t level = 1; level <= t.height(); ++level) {
        Floor fl;
        for (auto const& ref : refs) {
          if (ref.floor != level) {
            continue;
          }
          Flat f = grow(ref, t.flat(ref));
          for (int g = ref.lo; g < ref.hi; ++g) {
            out.index[static_cast<std::size_t>(g)] = static_cast<int>(pos) + (g - ref.lo);
          }
          pos += f.generator_count();
          fl.flats.push_back(f);
        }
        new_rank.push_back(pos);
        out.floors.push_back(fl);
      }
      for (std::size_t level = 1; level <= t.height(); ++level) {
        auto m = level_map(out.index, t.rank_at(level - 1), new_rank[level - 1]);
        for (auto& f : out.floors[level - 1].flats) {
          f = translate(f, m);
        }
      }
      return out;
    }

    void claim(std::set<std::string>& taken, std::string const& n) {
      if (!taken.insert(n).second) {
        throw TowerError("shape", "generator name " + n + " is already used");
      }
    }

    std::set<std::string> name_set(Basis const& b) {
      return {b.names().begin(), b.names().end()};
    }

  }  // namespace

  FloorDouble floor_double(Tower const& t, std::size_t level, NameMap const& rename) {
    if (level == 0 || level > t.height()) {
      throw std::out_of_range("floor_double: no floor " + std::to_string(level));
    }
    auto    taken = name_set(t.names());
    NameMap pairs;
    auto    ex = expand(t, [&](FlatRef const& ref, Flat const& f) {
      if (ref.floor != level) {
        return f;
      }
      if (f.kind != Flat::Kind::Abelian || f.closure) {
        throw TowerError("shape", "floor " + std::to_string(level) + " is not an abelian floor");
      }
      Flat d = f;
      for (auto const& n : f.names) {
        std::string p = twin_name(n, rename);
        claim(taken, p);
        pairs[n] = p;
        d.names.push_back(p);
      }
      d.rank = 2 * f.rank;
      return d;
    });
    FloorDouble out;
    out.level = level;
    out.pairs = pairs;
    out.tower = Tower(t.base(), ex.floors);
    auto const& nb     = out.tower.names();
    std::size_t src    = t.rank_at(level);
    std::size_t tgt    = out.tower.rank_at(level);
    std::size_t lower  = t.rank_at(level - 1);
    std::vector<Word> i1, i2;
    for (std::size_t g = 0; g < src; ++g) {
      i1.push_back(Word::gen(ex.index[g]));
      i2.push_back(g < lower ? Word::gen(static_cast<int>(g))
                             : Word::gen(*nb.index_of(pairs.at(t.names().name(g)))));
    }
    out.f1 = Morphism(tgt, i1);
    out.f2 = Morphism(tgt, i2);
    auto target = out.tower.structure_at(level);
    for (auto const* m : {&out.f1, &out.f2}) {
      auto c = check_morphism(*m, t.presentation_at(level), target);
      if (c.status == MorphismCheck::Status::Fail) {
        throw TowerError("double embedding", to_string(c));
      }
    }
    throw_on_failure(validate_tower(out.tower));
    return out;
  }

  namespace {

    std::vector<std::size_t> positions(std::vector<FlatRef> const& refs,
                                       std::function<bool(FlatRef const&)> const& pick) {
      std::vector<std::size_t> out;
      for (std::size_t k = 0; k < refs.size(); ++k) {
        if (pick(refs[k])) {
          out.push_back(k);
        }
      }
      return out;
    }

    // Copies of the floors [from, height] of t appended on top of t.  copy
    // gives the image of each old generator below the copied floor.
    std::vector<Floor> copy_floors(Tower const& t, std::size_t from,
                                   std::function<int(std::size_t)> const& copy, NameMap const& rename,
                                   std::set<std::string>& taken, NameMap& twin_ids) {
      std::vector<Floor> out;
      std::size_t        R = t.names().rank();
      std::size_t        above = t.rank_at(from - 1);
      for (std::size_t level = from; level <= t.height(); ++level) {
        std::size_t       lower = t.rank_at(level - 1);
        std::size_t       new_lower = R + lower - above;
        std::vector<Word> imgs;
        for (std::size_t g = 0; g < lower; ++g) {
          imgs.push_back(Word::gen(copy(g)));
        }
        imgs.push_back(Word::gen(static_cast<int>(new_lower)));
        Morphism m(new_lower + 1, imgs);
        Floor    fl;
        for (auto const& f : t.floors()[level - 1].flats) {
          Flat c = translate(f, m);
          c.id   = f.id + "'";
          for (auto& n : c.names) {
            n = twin_name(n, rename);
            claim(taken, n);
          }
          twin_ids[f.id] = c.id;
          twin_ids[c.id] = f.id;
          fl.flats.push_back(c);
        }
        out.push_back(fl);
      }
      return out;
    }

  }  // namespace

  TwinTower twin_tower(Tower const& t, NameMap const& rename) {
    TwinTower out;
    if (t.height() == 0) {
      out.result        = t;
      out.swap          = Morphism::identity(t.names().rank());
      out.original_rank = t.names().rank();
      return out;
    }
    std::size_t nab = 0;
    auto const& first = t.floors()[0].flats;
    for (auto const& f : first) {
      nab += f.kind == Flat::Kind::Abelian;
    }
    if (nab != 0 && nab != first.size()) {
      throw TowerError("convention", "first floor mixes abelian and other flats");
    }
    std::size_t b = t.base().rank();
    std::size_t m = t.height();
    Tower       src;
    std::vector<Floor> floors;
    std::vector<int> partner;  // in src, for the doubled floor
    if (nab == 0) {
      out.kind = TwinCase::NonAbelian;
      src      = t;
      floors   = t.floors();
      auto taken = name_set(t.names());
      std::size_t R = t.names().rank();
      auto copies = copy_floors(
          t, 1, [&](std::size_t g) { return static_cast<int>(g < b ? g : R + g - b); }, rename, taken,
          out.twin_map);
      floors.insert(floors.end(), copies.begin(), copies.end());
    } else {
      out.kind = TwinCase::Abelian;
      auto d   = floor_double(t, 1, rename);
      src      = d.tower;
      floors   = src.floors();
      partner.resize(src.names().rank());
      for (std::size_t g = 0; g < partner.size(); ++g) {
        partner[g] = static_cast<int>(g);
      }
      for (auto const& [z, y] : d.pairs) {
        int zi = *src.names().index_of(z), yi = *src.names().index_of(y);
        partner[static_cast<std::size_t>(zi)] = yi;
        partner[static_cast<std::size_t>(yi)] = zi;
      }
      if (m > 1) {
        auto        taken = name_set(src.names());
        std::size_t R     = src.names().rank();
        std::size_t r1    = src.rank_at(1);
        auto        copies = copy_floors(
            src, 2,
            [&](std::size_t g) { return g < r1 ? partner[g] : static_cast<int>(R + g - r1); }, rename,
            taken, out.twin_map);
        floors.insert(floors.end(), copies.begin(), copies.end());
      }
    }
    out.result        = Tower(t.base(), floors);
    out.original_rank = src.names().rank();
    std::size_t R     = out.original_rank;
    std::size_t N     = out.result.names().rank();
    std::size_t above = out.kind == TwinCase::Abelian ? src.rank_at(1) : b;
    std::vector<Word> sw(N);
    for (std::size_t g = 0; g < N; ++g) {
      int img;
      if (g < above) {
        img = out.kind == TwinCase::Abelian ? partner[g] : static_cast<int>(g);
      } else if (g < R) {
        img = static_cast<int>(R + g - above);
      } else {
        img = static_cast<int>(above + g - R);
      }
      sw[g] = Word::gen(img);
    }
    out.swap = Morphism(N, sw);
    auto refs       = out.result.flats();
    out.ordering    = positions(refs, [](FlatRef const&) { return true; });
    std::size_t top = src.height();
    if (out.kind == TwinCase::NonAbelian) {
      out.twin_ordering = positions(refs, [&](FlatRef const& r) { return r.floor > top; });
      auto orig = positions(refs, [&](FlatRef const& r) { return r.floor <= top; });
      out.twin_ordering.insert(out.twin_ordering.end(), orig.begin(), orig.end());
    } else {
      out.twin_ordering = positions(refs, [](FlatRef const& r) { return r.floor == 1; });
      auto cp   = positions(refs, [&](FlatRef const& r) { return r.floor > top; });
      auto orig = positions(refs, [&](FlatRef const& r) { return r.floor > 1 && r.floor <= top; });
      out.twin_ordering.insert(out.twin_ordering.end(), cp.begin(), cp.end());
      out.twin_ordering.insert(out.twin_ordering.end(), orig.begin(), orig.end());
    }
    out.report = validate_tower(out.result);
    throw_on_failure(out.report);
    auto sc = check_morphism(out.swap, out.result.presentation(), out.result.structure());
    if (sc.status == MorphismCheck::Status::Fail) {
      throw std::logic_error("twin swap is not a homomorphism: " + to_string(sc));
    }
    return out;
  }

  Tower tower_closure(Tower const& t, std::map<std::string, ClosureSpec> const& emb) {
    for (auto const& [id, spec] : emb) {
      auto ref = t.find_flat(id);
      if (!ref) {
        throw TowerError("shape", "no flat " + id);
      }
      auto const& f = t.flat(*ref);
      if (f.kind != Flat::Kind::Abelian || f.closure) {
        throw TowerError("shape", "flat " + id + " is not an abelian flat without closure");
      }
      if (spec.f.rank() != f.rank) {
        throw TowerError("shape", "closure embedding of flat " + id + " has the wrong rank");
      }
      if (!spec.f.finite_index()) {
        throw TowerError("finite index", "closure embedding of flat " + id + " has infinite index");
      }
    }
    auto taken = name_set(t.names());
    auto ex    = expand(t, [&](FlatRef const&, Flat const& f) {
      auto it = emb.find(f.id);
      if (it == emb.end()) {
        return f;
      }
      auto const& spec = it->second;
      Flat        c    = f;
      std::vector<std::string> names = spec.names;
      if (names.empty()) {
        Basis b(std::vector<std::string>(taken.begin(), taken.end()));
        names = fresh_names(b, "a", f.rank);
      }
      if (names.size() != f.rank) {
        throw TowerError("shape", "closure names of flat " + f.id + " have the wrong length");
      }
      for (auto const& n : names) {
        claim(taken, n);
        c.names.push_back(n);
      }
      c.closure     = spec.f;
      c.retract_exp = spec.retract_exp.empty() ? IntVec(f.rank, 1) : spec.retract_exp;
      return c;
    });
    Tower cl(t.base(), ex.floors);
    throw_on_failure(validate_tower(cl));
    return cl;
  }

  Morphism closure_inclusion(Tower const& t, Tower const& closure) {
    std::vector<Word> imgs;
    for (auto const& n : t.names().names()) {
      auto i = closure.names().index_of(n);
      if (!i) {
        throw std::invalid_argument("closure_inclusion: " + n + " missing");
      }
      imgs.push_back(Word::gen(*i));
    }
    return Morphism(closure.names().rank(), imgs);
  }

  Extension extension_test(ClosureEmbedding const& f, IntVec const& p) {
    auto      sys = embedding_to_system(f);
    Extension out;
    out.coset   = system_to_coset(sys);
    out.y       = solvable(sys, p);
    out.extends = out.y.has_value();
    return out;
  }

  SymmetricPair symmetrize(ClosureEmbedding const& f, ClosureEmbedding const& fhat) {
    if (f.rank() != fhat.rank()) {
      throw std::invalid_argument("symmetrize: ranks differ");
    }
    auto    c  = system_to_coset(embedding_to_system(f));
    auto    ch = system_to_coset(embedding_to_system(fhat));
    Lattice U  = intersect_lattices(c.lattice, ch.lattice);
    SymmetricPair out;
    out.coset     = {U.reduce(c.offset), U};
    out.coset_hat = {U.reduce(ch.offset), U};
    out.f         = coset_to_embedding(out.coset);
    out.fhat      = coset_to_embedding(out.coset_hat);
    return out;
  }

  SymmetricClosure symmetric_closure(TwinTower const& tt,
                                     std::map<std::string, ClosureSpec> const& emb) {
    SymmetricClosure                    out;
    std::map<std::string, ClosureSpec> specs = emb;
    std::set<std::string>               done;
    for (auto const& [id, spec] : emb) {
      auto tw = tt.twin_map.find(id);
      if (tw == tt.twin_map.end() || done.count(id)) {
        continue;
      }
      auto other = emb.find(tw->second);
      if (other == emb.end()) {
        throw std::invalid_argument("flats not twins: " + id + " has an embedding, its twin "
                                    + tw->second + " has none");
      }
      auto p  = symmetrize(spec.f, other->second.f);
      p.flat  = id;
      p.twin  = tw->second;
      specs[id].f          = p.f;
      specs[tw->second].f  = p.fhat;
      done.insert(id);
      done.insert(tw->second);
      out.pairs.push_back(p);
    }
    for (auto const& [id, spec] : emb) {
      if (!done.count(id) && tt.twin_map.count(id)) {
        throw std::invalid_argument("flats not twins: " + id);
      }
    }
    out.tower = tower_closure(tt.result, specs);
    for (auto const& p : out.pairs) {
      auto U  = system_to_coset(embedding_to_system(specs[p.flat].f)).lattice;
      auto Uh = system_to_coset(embedding_to_system(specs[p.twin].f)).lattice;
      if (!(U == Uh)) {
        throw std::logic_error("symmetric closure: lattices of " + p.flat + " and " + p.twin + " differ");
      }
    }
    return out;
  }

  std::vector<Word> standard_boundary(std::size_t genus, std::size_t boundaries) {
    if (boundaries == 0) {
      throw std::invalid_argument("surface without boundary");
    }
    Word h;
    for (std::size_t i = 0; i < genus; ++i) {
      h *= commutator(Word::gen(static_cast<int>(2 * i)), Word::gen(static_cast<int>(2 * i + 1)));
    }
    Word s;
    for (std::size_t k = 1; k < boundaries; ++k) {
      s *= Word::gen(static_cast<int>(2 * genus + k - 1));
    }
    std::vector<Word> out{h * s.inverse()};
    for (std::size_t k = 1; k < boundaries; ++k) {
      out.push_back(Word::gen(static_cast<int>(2 * genus + k - 1)));
    }
    return out;
  }

  Filtration default_filtration(Gad const& gad) {
    auto const& g = gad.gog;
    Filtration  out;
    bool        found = false;
    for (auto const& v : g.vertices()) {
      if (gad.type.at(v.id) == VertexType::Rigid && (!found || v.id < out.root)) {
        out.root = v.id;
        found    = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("completion needs a rigid vertex");
    }
    std::set<int>   seen{out.root};
    std::set<int>   used;
    std::deque<int> q{out.root};
    std::vector<GogEdge> edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](GogEdge const& a, GogEdge const& b) { return a.id < b.id; });
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto const& e : edges) {
        if ((e.from != u && e.to != u) || used.count(e.id)) {
          continue;
        }
        used.insert(e.id);
        out.edges.push_back(e.id);
        int other = e.from == u ? e.to : e.from;
        if (seen.insert(other).second) {
          q.push_back(other);
        }
      }
    }
    return out;
  }

  namespace {

    struct PegMatch {
      int  flat = -1;  // -1: new flat
      Word conj;       // P = conj p^sign conj^-1
      int  sign = 1;
      Word root;       // P, with x = P^power
      long long power = 1;
    };

    struct AbelianRec {
      std::string              id;
      Word                     peg;
      std::vector<std::string> names;
    };

    struct SurfaceRec {
      int                      vertex = 0;
      std::string              id;
      std::size_t              genus = 0;
      std::vector<std::string> names;  // flat generators by vertex position
      std::vector<std::optional<Word>> boundary;
      std::vector<Word>        t_image;  // retraction of t_k, k >= 2
    };

    struct Order {
      bool surface = false;
      std::size_t index = 0;
    };

  }  // namespace

  CompletionResult completion(Gad const&                          gad,
                              std::map<std::string, Word> const& eta,
                              Basis const&                        L,
                              std::optional<Filtration>           filtration) {
    validate_gad(gad);
    auto const&      g = gad.gog;
    CompletionResult out;
    out.filtration = filtration ? *filtration : default_filtration(gad);
    auto const& F  = out.filtration;
    auto type      = [&](int v) { return gad.type.at(v); };
    if (type(F.root) != VertexType::Rigid) {
      throw std::invalid_argument("filtration root must be rigid");
    }
    // tree edges: those adding a vertex
    std::set<int> tree, covered{F.root}, seen_edges;
    for (int e : F.edges) {
      auto const& ed = g.edge(e);
      if (!seen_edges.insert(e).second) {
        throw std::invalid_argument("filtration repeats edge " + std::to_string(e));
      }
      bool a = covered.count(ed.from), b = covered.count(ed.to);
      if (!a && !b) {
        throw std::invalid_argument("filtration edge " + std::to_string(e) + " is not attached");
      }
      if (!a || !b) {
        tree.insert(e);
        covered.insert(a ? ed.to : ed.from);
      }
      if (ed.rank != 1) {
        throw std::invalid_argument("completion needs cyclic edge groups");
      }
    }
    if (seen_edges.size() != g.edges().size() || covered.size() != g.vertices().size()) {
      throw std::invalid_argument("filtration does not cover the graph");
    }
    out.fp            = fundamental_presentation(g, tree);
    auto const& fp    = out.fp;
    auto const& names = fp.presentation.generators;
    std::size_t n     = names.rank();

    auto eta_of = [&](int gen) {
      auto it = eta.find(names.name(static_cast<std::size_t>(gen)));
      if (it == eta.end()) {
        throw std::invalid_argument("eta: no image for " + names.name(static_cast<std::size_t>(gen)));
      }
      if (!it->second.uses_only_below(static_cast<int>(L.rank()))) {
        throw std::invalid_argument("eta: image of " + it->first + " is not a word over L");
      }
      return it->second;
    };
    auto eta_w = [&](Word const& w) {
      Word r;
      for (Letter l : w) {
        Word x = eta_of(gen_of(l));
        r *= l > 0 ? x : x.inverse();
      }
      return r;
    };
    for (std::size_t i = 0; i < n; ++i) {
      eta_of(static_cast<int>(i));
    }
    for (auto const& r : fp.presentation.relators) {
      bool defined = true;
      for (Letter l : r) {
        defined = defined && eta.count(names.name(static_cast<std::size_t>(gen_of(l))));
      }
      if (defined && !eta_w(r).empty()) {
        throw std::invalid_argument("eta is not a homomorphism: relator "
                                    + format_word(r, names) + " survives");
      }
    }
    auto shifted = [&](int v, Word const& w) {
      std::vector<Letter> raw;
      int                 off = fp.vertex_offset.at(v);
      for (Letter l : w) {
        raw.push_back(letter(gen_of(l) + off, l > 0 ? 1 : -1));
      }
      return Word(raw);
    };
    auto vertex_gens = [&](int v) {
      std::vector<int> out_g;
      int              off = fp.vertex_offset.at(v);
      for (std::size_t k = 0; k < g.vertex(v).group.rank(); ++k) {
        out_g.push_back(off + static_cast<int>(k));
      }
      return out_g;
    };

    // generators of Comp by creation order
    Basis                   R = L;
    std::vector<AbelianRec> abel;
    std::vector<SurfaceRec> surf;
    std::vector<Order>      order;
    std::map<int, std::size_t> surf_of;
    std::vector<std::optional<Word>> f(n);
    std::map<int, Word>&    gamma = out.gamma;
    auto fresh = [&](std::string const& prefix) {
      auto nm = fresh_names(R, prefix, 1)[0];
      R.add(nm);
      return Word::gen(*R.index_of(nm));
    };
    auto set_rigid = [&](int v) {
      for (int x : vertex_gens(v)) {
        f[static_cast<std::size_t>(x)] = conjugate(gamma.at(v), eta_of(x));
      }
    };
    auto match_peg = [&](Word const& x) {
      if (x.empty()) {
        throw std::invalid_argument("strictness: an edge group is killed by eta");
      }
      PegMatch pm;
      auto     cd        = cyclic_decompose(x);
      auto [root, power] = primitive_root(cd.core);
      pm.root            = conjugate(cd.conj, root);
      pm.power           = power;
      for (std::size_t k = 0; k < abel.size(); ++k) {
        for (int s : {1, -1}) {
          Word p = s > 0 ? abel[k].peg : abel[k].peg.inverse();
          if (auto c = is_conjugate_cyclic(pm.root, p)) {
            pm.flat = static_cast<int>(k);
            pm.conj = *c;
            pm.sign = s;
            return pm;
          }
        }
      }
      return pm;
    };
    auto flat_for = [&](PegMatch& pm, std::string& kind, char letter_case) {
      if (pm.flat < 0) {
        abel.push_back({"C" + std::to_string(abel.size() + 1), pm.root, {}});
        order.push_back({false, abel.size() - 1});
        pm.flat = static_cast<int>(abel.size()) - 1;
        pm.conj = Word();
        pm.sign = 1;
        kind += letter_case;
      } else {
        kind += static_cast<char>(letter_case + 1);
      }
      return static_cast<std::size_t>(pm.flat);
    };
    auto tau = [&](SurfaceRec const& s, std::size_t k) {
      return k == 0 ? Word() : Word::gen(*R.index_of(s.names[2 * s.genus + k - 1]));
    };

    gamma[F.root] = Word();
    set_rigid(F.root);
    std::set<int> in{F.root};
    for (int e : F.edges) {
      auto const&    ed = g.edge(e);
      CompletionStep step{e, "", ""};
      bool           fi = in.count(ed.from), ti = in.count(ed.to);
      bool           hnn = fi && ti;
      VertexType     tf = type(ed.from), tt = type(ed.to);
      Word           img_from = shifted(ed.from, ed.from_image[0]);
      Word           img_to   = shifted(ed.to, ed.to_image[0]);
      if (tf == VertexType::Rigid && tt == VertexType::Rigid) {
        step.kind = "1";
        if (hnn) {
          auto        pm = match_peg(eta_w(img_from));
          std::size_t k  = flat_for(pm, step.kind, 'A');
          Word        z  = fresh("z");
          abel[k].names.push_back(R.name(static_cast<std::size_t>(gen_of(z[0]))));
          Word zc = conjugate(pm.conj, z);
          int  T  = fp.stable_letter.at(e);
          f[static_cast<std::size_t>(T)] =
              gamma.at(ed.to) * eta_of(T) * zc * gamma.at(ed.from).inverse();
        } else {
          int  u   = fi ? ed.from : ed.to;
          int  v   = fi ? ed.to : ed.from;
          Word img = eta_w(fi ? img_from : img_to);
          auto pm  = match_peg(img);
          std::size_t k = flat_for(pm, step.kind, 'A');
          Word        z = fresh("z");
          abel[k].names.push_back(R.name(static_cast<std::size_t>(gen_of(z[0]))));
          gamma[v] = gamma.at(u) * conjugate(pm.conj, z);
          set_rigid(v);
        }
        step.detail = "flat " + abel.back().id;
      } else if ((tf == VertexType::Rigid && tt == VertexType::Abelian)
                 || (tf == VertexType::Abelian && tt == VertexType::Rigid)) {
        int a = tf == VertexType::Abelian ? ed.from : ed.to;
        int u = a == ed.from ? ed.to : ed.from;
        if (in.count(a)) {
          throw std::invalid_argument("abelian vertex " + std::to_string(a) + " must be a leaf added once");
        }
        auto const& grp  = g.vertex(a).group;
        std::size_t rank = grp.rank();
        IntVec      w    = exponent_vector(a == ed.from ? ed.from_image[0] : ed.to_image[0], rank);
        std::optional<std::size_t> j;
        for (std::size_t i = 0; i < rank && !j; ++i) {
          if (w[i] == 1 || w[i] == -1) {
            j = i;
          }
        }
        if (!j) {
          throw std::invalid_argument("abelian vertex " + std::to_string(a)
                                      + ": edge image needs a coordinate equal to +-1");
        }
        step.kind     = "2";
        auto        pm = match_peg(eta_w(a == ed.from ? img_to : img_from));
        long long   e_pow = pm.power;
        std::size_t k  = flat_for(pm, step.kind, 'A');
        std::vector<Word> psi(rank);
        Word              rest;
        for (std::size_t i = 0; i < rank; ++i) {
          if (i == *j) {
            continue;
          }
          Word z = fresh("z");
          abel[k].names.push_back(R.name(static_cast<std::size_t>(gen_of(z[0]))));
          psi[i] = z;
          rest *= z.pow(-w[i].convert_to<long long>());
        }
        Word pj = abel[k].peg.pow(pm.sign * e_pow) * rest;
        psi[*j] = pj.pow(w[*j].convert_to<long long>());
        gamma[a] = gamma.at(u);
        auto gens = vertex_gens(a);
        for (std::size_t i = 0; i < rank; ++i) {
          f[static_cast<std::size_t>(gens[i])] = conjugate(gamma.at(a) * pm.conj, psi[i]);
        }
        in.insert(a);
        step.detail = "flat " + abel[k].id;
      } else if ((tf == VertexType::Surface && tt == VertexType::Rigid)
                 || (tf == VertexType::Rigid && tt == VertexType::Surface)) {
        int  s        = tf == VertexType::Surface ? ed.from : ed.to;
        int  r        = s == ed.from ? ed.to : ed.from;
        auto const& sd  = gad.surface.at(s);
        auto const& grp = g.vertex(s).group;
        auto        std_b = standard_boundary(sd.genus, sd.boundary.size());
        if (sd.boundary != std_b) {
          throw std::invalid_argument("surface vertex " + std::to_string(s)
                                      + " is not in standard form");
        }
        Word        local = s == ed.from ? ed.from_image[0] : ed.to_image[0];
        std::size_t k     = std_b.size();
        int         eps   = 1;
        for (std::size_t i = 0; i < std_b.size(); ++i) {
          if (local == std_b[i]) {
            k = i;
          } else if (local == std_b[i].inverse()) {
            k   = i;
            eps = -1;
          }
        }
        if (k == std_b.size()) {
          throw std::invalid_argument("surface edge image is not a standard boundary word");
        }
        Word rig = eta_w(s == ed.from ? img_to : img_from);
        if (rig.empty()) {
          throw std::invalid_argument("strictness: boundary killed by eta");
        }
        if (!in.count(s)) {
          step.kind = "3A";
          SurfaceRec rec;
          rec.vertex = s;
          rec.id     = "S" + std::to_string(s);
          rec.genus  = sd.genus;
          for (auto const& nm : grp.generators.names()) {
            std::string c = nm + "'";
            while (R.index_of(c)) {
              c += "'";
            }
            R.add(c);
            rec.names.push_back(c);
          }
          rec.boundary.assign(std_b.size(), std::nullopt);
          rec.t_image.assign(std_b.size(), Word());
          surf.push_back(rec);
          order.push_back({true, surf.size() - 1});
          surf_of[s] = surf.size() - 1;
          auto& sr   = surf.back();
          sr.boundary[k] = eps > 0 ? rig : rig.inverse();
          gamma[s]       = gamma.at(r) * tau(sr, k).inverse();
          in.insert(s);
        } else {
          step.kind  = "3B";
          auto& sr   = surf[surf_of.at(s)];
          if (sr.boundary[k]) {
            throw std::invalid_argument("surface boundary attached twice");
          }
          Word sk = gamma.at(s) * tau(sr, k);
          if (!hnn) {
            sr.boundary[k] = eps > 0 ? rig : rig.inverse();
            gamma[r]       = sk;
            set_rigid(r);
            in.insert(r);
          } else {
            if (k == 0) {
              throw std::invalid_argument("the first boundary of a surface must be attached by a tree edge");
            }
            int  T    = fp.stable_letter.at(e);
            Word eT   = eta_of(T);
            sr.boundary[k] = eps > 0 ? rig : rig.inverse();
            if (s == ed.from) {
              sr.t_image[k] = eT.inverse();
              f[static_cast<std::size_t>(T)] = gamma.at(r) * sk.inverse();
            } else {
              sr.t_image[k] = eT;
              f[static_cast<std::size_t>(T)] = sk * gamma.at(r).inverse();
            }
          }
        }
        step.detail = "flat " + surf[surf_of.at(s)].id;
      } else {
        throw std::invalid_argument("edge " + std::to_string(e) + " joins unsupported vertex types");
      }
      in.insert(ed.from);
      in.insert(ed.to);
      out.steps.push_back(step);
    }
    // surface generators, now that every boundary is known
    for (auto const& sr : surf) {
      auto gens = vertex_gens(sr.vertex);
      for (std::size_t k = 0; k < sr.boundary.size(); ++k) {
        if (!sr.boundary[k]) {
          throw std::invalid_argument("surface boundary without an edge");
        }
      }
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Word x = Word::gen(*R.index_of(sr.names[i]));
        if (i >= 2 * sr.genus) {
          std::size_t k = i - 2 * sr.genus + 1;
          x             = conjugate(x, *sr.boundary[k]);
        }
        f[static_cast<std::size_t>(gens[i])] = conjugate(gamma.at(sr.vertex), x);
      }
    }
    // the comp tower, flats in creation order
    std::vector<Flat> flats;
    for (auto const& o : order) {
      Flat fl;
      if (!o.surface) {
        auto const& a = abel[o.index];
        fl.kind  = Flat::Kind::Abelian;
        fl.id    = a.id;
        fl.names = a.names;
        fl.peg   = a.peg;
        fl.rank  = a.names.size();
      } else {
        auto const& sr = surf[o.index];
        fl.kind  = Flat::Kind::Surface;
        fl.id    = sr.id;
        fl.names = sr.names;
        fl.genus = sr.genus;
        for (auto const& b : sr.boundary) {
          fl.boundary.push_back(*b);
        }
        auto gens = vertex_gens(sr.vertex);
        for (std::size_t i = 0; i < 2 * sr.genus; ++i) {
          fl.images.push_back(eta_of(gens[i]));
        }
        for (std::size_t k = 1; k < sr.boundary.size(); ++k) {
          fl.images.push_back(sr.t_image[k]);
        }
        for (int h = 0; h < static_cast<int>(sr.genus); ++h) {
          fl.twists.emplace_back(2 * h, 2 * h + 1);
          fl.twists.emplace_back(2 * h + 1, 2 * h);
        }
      }
      flats.push_back(fl);
    }
    out.comp = flats.empty() ? Tower(L, {}) : Tower(L, {Floor{flats}});
    std::vector<Word> remap;
    for (auto const& nm : R.names()) {
      remap.push_back(Word::gen(*out.comp.names().index_of(nm)));
    }
    Morphism          rm(out.comp.names().rank(), remap);
    std::vector<Word> imgs;
    for (std::size_t i = 0; i < n; ++i) {
      if (!f[i]) {
        throw std::logic_error("completion: no image for " + names.name(i));
      }
      imgs.push_back(rm(*f[i]));
    }
    out.embedding = Morphism(out.comp.names().rank(), imgs);
    for (auto& [v, w] : gamma) {
      w = rm(w);
    }
    out.report = validate_tower(out.comp);
    if (auto const* c = out.report.first_failure()) {
      throw std::invalid_argument("strictness: " + c->name + " fails (" + c->detail + ")");
    }
    out.check = check_morphism(out.embedding, fp.presentation, out.comp.structure(), out.comp.witnesses());
    if (out.check.status == MorphismCheck::Status::Fail) {
      throw std::logic_error("completion embedding does not preserve relator "
                             + std::to_string(out.check.failed));
    }
    return out;
  }

}  // namespace bsw
