#include "bsw/gog.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace bsw {

  namespace {

    bool group_commutes(Presentation const& p, Word const& a, Word const& b) {
      if (p.relators.empty()) {
        return commutes(a, b);
      }
      return is_free_abelian_presentation(p);
    }

    // Word over the vertex generators shifted to the global block at off.
    Word shift(Word const& w, int off) {
      std::vector<Letter> raw;
      for (Letter l : w) {
        raw.push_back(letter(gen_of(l) + off, l > 0 ? 1 : -1));
      }
      return Word(raw);
    }

    struct Adjacent {
      int edge;
      int other;
      int dir;  // +1 when leaving through from -> to
    };

    std::map<int, std::vector<Adjacent>> adjacency(GraphOfGroups const& g) {
      std::map<int, std::vector<Adjacent>> adj;
      for (auto const& v : g.vertices()) {
        adj[v.id];
      }
      for (auto const& e : g.edges()) {
        adj[e.from].push_back({e.id, e.to, 1});
        adj[e.to].push_back({e.id, e.from, -1});
      }
      for (auto& [v, list] : adj) {
        std::stable_sort(list.begin(), list.end(),
                         [](Adjacent const& a, Adjacent const& b) { return a.edge < b.edge; });
      }
      return adj;
    }

    int root_of(GraphOfGroups const& g) {
      int r = g.vertices().front().id;
      for (auto const& v : g.vertices()) {
        r = std::min(r, v.id);
      }
      return r;
    }

    // Tree path from the root to each vertex as (edge, dir) steps.
    std::map<int, std::vector<std::pair<int, int>>> tree_paths(GraphOfGroups const& g,
                                                               std::set<int> const& tree) {
      auto                                            adj = adjacency(g);
      std::map<int, std::vector<std::pair<int, int>>> path;
      int                                             r = root_of(g);
      path[r]                                           = {};
      std::deque<int> q{r};
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (auto const& a : adj[u]) {
          if (!tree.count(a.edge) || path.count(a.other)) {
            continue;
          }
          path[a.other] = path[u];
          path[a.other].emplace_back(a.edge, a.dir);
          q.push_back(a.other);
        }
      }
      return path;
    }

  }  // namespace

  GraphOfGroups::GraphOfGroups(std::vector<GogVertex> vertices, std::vector<GogEdge> edges)
      : _v(std::move(vertices)), _e(std::move(edges)) {
    if (_v.empty()) {
      throw std::invalid_argument("graph of groups without vertices");
    }
    std::set<int> vids, eids;
    for (auto const& v : _v) {
      if (!vids.insert(v.id).second) {
        throw std::invalid_argument("duplicate vertex id " + std::to_string(v.id));
      }
      for (auto const& r : v.group.relators) {
        if (!r.uses_only_below(static_cast<int>(v.group.rank()))) {
          throw std::invalid_argument("vertex relator outside its group");
        }
      }
    }
    for (auto const& e : _e) {
      std::string where = "edge " + std::to_string(e.id) + ": ";
      if (!eids.insert(e.id).second) {
        throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
      }
      if (!vids.count(e.from) || !vids.count(e.to)) {
        throw std::invalid_argument(where + "unknown endpoint");
      }
      if (e.rank == 0 || e.from_image.size() != e.rank || e.to_image.size() != e.rank) {
        throw std::invalid_argument(where + "one image per edge generator on each side");
      }
      for (auto const& [side, imgs] : {std::pair{e.from, &e.from_image}, std::pair{e.to, &e.to_image}}) {
        auto const& grp = vertex(side).group;
        for (auto const& w : *imgs) {
          if (w.empty() || !w.uses_only_below(static_cast<int>(grp.rank()))) {
            throw std::invalid_argument(where + "edge image is not a non-trivial vertex word");
          }
        }
        for (std::size_t i = 0; i < imgs->size(); ++i) {
          for (std::size_t j = i + 1; j < imgs->size(); ++j) {
            if (!group_commutes(grp, (*imgs)[i], (*imgs)[j])) {
              throw std::invalid_argument(where + "edge images do not commute");
            }
          }
        }
      }
    }
    auto paths = tree_paths(*this, eids);
    if (paths.size() != _v.size()) {
      throw std::invalid_argument("graph is not connected");
    }
  }

  GogVertex const& GraphOfGroups::vertex(int id) const {
    return _v.at(vertex_index(id));
  }

  std::size_t GraphOfGroups::vertex_index(int id) const {
    for (std::size_t i = 0; i < _v.size(); ++i) {
      if (_v[i].id == id) {
        return i;
      }
    }
    throw std::out_of_range("no vertex " + std::to_string(id));
  }

  GogEdge const& GraphOfGroups::edge(int id) const {
    for (auto const& e : _e) {
      if (e.id == id) {
        return e;
      }
    }
    throw std::out_of_range("no edge " + std::to_string(id));
  }

  std::set<int> maximal_subtree(GraphOfGroups const& g) {
    std::set<int> all;
    for (auto const& e : g.edges()) {
      all.insert(e.id);
    }
    std::set<int> tree;
    for (auto const& [v, p] : tree_paths(g, all)) {
      if (!p.empty()) {
        tree.insert(p.back().first);
      }
    }
    return tree;
  }

  bool is_spanning_tree(GraphOfGroups const& g, std::set<int> const& tree) {
    for (int e : tree) {
      bool found = false;
      for (auto const& x : g.edges()) {
        found = found || x.id == e;
      }
      if (!found) {
        return false;
      }
    }
    if (tree.size() + 1 != g.vertices().size()) {
      return false;
    }
    return tree_paths(g, tree).size() == g.vertices().size();
  }

  FundamentalPresentation fundamental_presentation(GraphOfGroups const& g,
                                                   std::set<int> const& tree) {
    if (!is_spanning_tree(g, tree)) {
      throw std::invalid_argument("not a maximal subtree");
    }
    FundamentalPresentation fp;
    fp.tree = tree;
    Basis names;
    for (auto const& v : g.vertices()) {
      fp.vertex_offset[v.id] = static_cast<int>(names.rank());
      for (auto const& n : v.group.generators.names()) {
        names.add(n);
      }
    }
    for (auto const& e : g.edges()) {
      if (!tree.count(e.id)) {
        fp.stable_letter[e.id] = names.add("t_" + std::to_string(e.id));
      }
    }
    fp.presentation.generators = names;
    for (auto const& v : g.vertices()) {
      for (auto const& r : v.group.relators) {
        fp.presentation.relators.push_back(shift(r, fp.vertex_offset[v.id]));
      }
    }
    for (auto const& e : g.edges()) {
      Word t = tree.count(e.id) ? Word() : Word::gen(fp.stable_letter[e.id]);
      for (std::size_t c = 0; c < e.rank; ++c) {
        Word fe  = shift(e.to_image[c], fp.vertex_offset[e.to]);
        Word feb = shift(e.from_image[c], fp.vertex_offset[e.from]);
        Word r   = fe * conjugate(t, feb.inverse());
        if (!r.empty()) {
          fp.presentation.relators.push_back(r);
        }
      }
    }
    return fp;
  }

  SubtreeChange change_subtree(GraphOfGroups const& g,
                               std::set<int> const& t1,
                               std::set<int> const& t2) {
    auto fp1 = fundamental_presentation(g, t1);
    auto fp2 = fundamental_presentation(g, t2);
    auto map = [&](FundamentalPresentation const& a, FundamentalPresentation const& b) {
      // value of t_e in b
      auto s = [&](int e) {
        auto it = b.stable_letter.find(e);
        return it == b.stable_letter.end() ? Word() : Word::gen(it->second);
      };
      auto              paths = tree_paths(g, a.tree);
      std::map<int, Word> Q;
      for (auto const& [v, p] : paths) {
        Word q;
        for (auto [e, dir] : p) {
          q *= dir > 0 ? s(e).inverse() : s(e);
        }
        Q[v] = q;
      }
      std::vector<Word> imgs(a.presentation.rank());
      for (auto const& v : g.vertices()) {
        int oa = a.vertex_offset.at(v.id), ob = b.vertex_offset.at(v.id);
        for (std::size_t k = 0; k < v.group.rank(); ++k) {
          imgs[static_cast<std::size_t>(oa) + k] =
              conjugate(Q[v.id], Word::gen(ob + static_cast<int>(k)));
        }
      }
      for (auto const& [e, gen] : a.stable_letter) {
        auto const& ed = g.edge(e);
        imgs[static_cast<std::size_t>(gen)] = Q[ed.to] * s(e) * Q[ed.from].inverse();
      }
      return Morphism(b.presentation.rank(), imgs);
    };
    return {map(fp1, fp2), map(fp2, fp1)};
  }

  std::string to_string(VertexType t) {
    switch (t) {
      case VertexType::Surface:
        return "surface";
      case VertexType::Abelian:
        return "abelian";
      default:
        return "rigid";
    }
  }

  bool is_free_abelian_presentation(Presentation const& p) {
    std::vector<Word> want;
    for (std::size_t i = 0; i < p.rank(); ++i) {
      for (std::size_t j = i + 1; j < p.rank(); ++j) {
        want.push_back(commutator(Word::gen(static_cast<int>(i)), Word::gen(static_cast<int>(j))));
      }
    }
    return same_relator_set(want, p.relators);
  }

  IntVec exponent_vector(Word const& w, std::size_t rank) {
    IntVec v(rank, 0);
    for (Letter l : w) {
      v.at(static_cast<std::size_t>(gen_of(l))) += l > 0 ? 1 : -1;
    }
    return v;
  }

  void validate_gad(Gad const& gad) {
    auto const& g = gad.gog;
    for (auto const& v : g.vertices()) {
      auto it = gad.type.find(v.id);
      if (it == gad.type.end()) {
        throw std::invalid_argument("vertex " + std::to_string(v.id) + " has no type");
      }
      std::string where = "vertex " + std::to_string(v.id) + ": ";
      if (it->second == VertexType::Abelian) {
        if (!is_free_abelian_presentation(v.group) || v.group.rank() < 2) {
          throw std::invalid_argument(where + "abelian vertex group must be free abelian of rank >= 2");
        }
      }
      if (it->second != VertexType::Surface) {
        continue;
      }
      auto sd = gad.surface.find(v.id);
      if (sd == gad.surface.end()) {
        throw std::invalid_argument(where + "surface vertex without surface data");
      }
      auto const& s = sd->second;
      if (!v.group.relators.empty()
          || v.group.rank() != 2 * s.genus + s.boundary.size() - 1 || s.boundary.empty()) {
        throw std::invalid_argument(where + "surface group must be free of rank 2g+n-1");
      }
      std::vector<bool> used(s.boundary.size(), false);
      for (auto const& e : g.edges()) {
        for (auto const& [side, imgs] : {std::pair{e.from, &e.from_image}, std::pair{e.to, &e.to_image}}) {
          if (side != v.id) {
            continue;
          }
          if (e.rank != 1) {
            throw std::invalid_argument(where + "edge groups at a surface vertex must be cyclic");
          }
          bool hit = false;
          for (std::size_t b = 0; b < s.boundary.size() && !hit; ++b) {
            Word const& w = (*imgs)[0];
            if (!used[b] && (is_conjugate_cyclic(w, s.boundary[b]) || is_conjugate_cyclic(w, s.boundary[b].inverse()))) {
              used[b] = hit = true;
            }
          }
          if (!hit) {
            throw std::invalid_argument(where + "edge image is not an unused boundary word");
          }
        }
      }
      if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw std::invalid_argument(where + "boundary component without an edge");
      }
    }
  }

  Peripheral peripheral_subgroup(Gad const& gad, int vertex) {
    auto it = gad.type.find(vertex);
    if (it == gad.type.end() || it->second != VertexType::Abelian) {
      throw std::invalid_argument("peripheral subgroup of a non-abelian vertex");
    }
    std::size_t         k = gad.gog.vertex(vertex).group.rank();
    std::vector<IntVec> cols;
    for (auto const& e : gad.gog.edges()) {
      if (e.to == vertex) {
        for (auto const& w : e.to_image) {
          cols.push_back(exponent_vector(w, k));
        }
      }
      if (e.from == vertex) {
        for (auto const& w : e.from_image) {
          cols.push_back(exponent_vector(w, k));
        }
      }
    }
    Lattice P = cols.empty() ? Lattice::zero(k) : Lattice(IntMatrix::from_columns(cols, k));
    return {P, saturation(P)};
  }

  namespace {

    Word edge_word(std::vector<Word> const& imgs, IntVec const& power) {
      if (power.size() != imgs.size()) {
        throw std::invalid_argument("twist power of wrong length");
      }
      Word g;
      for (std::size_t i = 0; i < imgs.size(); ++i) {
        g *= imgs[i].pow(power[i].convert_to<long long>());
      }
      return g;
    }

    Automorphism twist_by(GraphOfGroups const& g, FundamentalPresentation const& fp, int edge,
                          Word const& gw, int twisted_vertex) {
      auto const& e = g.edge(edge);
      std::size_t n = fp.presentation.rank();
      std::vector<Word> imgs;
      for (std::size_t i = 0; i < n; ++i) {
        imgs.push_back(Word::gen(static_cast<int>(i)));
      }
      Automorphism out{"twist-e" + std::to_string(edge), Morphism()};
      if (!fp.tree.count(edge)) {
        int t = fp.stable_letter.at(edge);
        imgs[static_cast<std::size_t>(t)] = Word::gen(t) * gw;
        out.map = Morphism(n, imgs);
        return out;
      }
      std::set<int> rest = fp.tree;
      rest.erase(edge);
      std::set<int> side;
      {
        auto              adj = adjacency(g);
        std::deque<int>   q{twisted_vertex};
        side.insert(twisted_vertex);
        while (!q.empty()) {
          int u = q.front();
          q.pop_front();
          for (auto const& a : adj[u]) {
            if (rest.count(a.edge) && side.insert(a.other).second) {
              q.push_back(a.other);
            }
          }
        }
      }
      if (!side.count(e.from) && !side.count(e.to)) {
        throw std::invalid_argument("twisted vertex is not separated by the edge");
      }
      for (auto const& v : g.vertices()) {
        if (!side.count(v.id)) {
          continue;
        }
        int off = fp.vertex_offset.at(v.id);
        for (std::size_t k = 0; k < v.group.rank(); ++k) {
          imgs[static_cast<std::size_t>(off) + k] = conjugate(gw, Word::gen(off + static_cast<int>(k)));
        }
      }
      for (auto const& [f, t] : fp.stable_letter) {
        auto const& ed   = g.edge(f);
        bool        to   = side.count(ed.to) > 0;
        bool        from = side.count(ed.from) > 0;
        Word        tw   = Word::gen(t);
        if (to && from) {
          imgs[static_cast<std::size_t>(t)] = conjugate(gw, tw);
        } else if (to) {
          imgs[static_cast<std::size_t>(t)] = gw * tw;
        } else if (from) {
          imgs[static_cast<std::size_t>(t)] = tw * gw.inverse();
        }
      }
      out.map = Morphism(n, imgs);
      return out;
    }

  }  // namespace

  Automorphism dehn_twist(GraphOfGroups const& g, FundamentalPresentation const& fp, int edge,
                          IntVec const& power, int twisted_vertex) {
    auto const& e = g.edge(edge);
    Word        gw;
    if (fp.tree.count(edge)) {
      // image on the side that stays fixed
      std::set<int> probe = fp.tree;
      bool          to_side_twisted = false;
      {
        probe.erase(edge);
        auto            adj = adjacency(g);
        std::set<int>   seen{twisted_vertex};
        std::deque<int> q{twisted_vertex};
        while (!q.empty()) {
          int u = q.front();
          q.pop_front();
          for (auto const& a : adj[u]) {
            if (probe.count(a.edge) && seen.insert(a.other).second) {
              q.push_back(a.other);
            }
          }
        }
        to_side_twisted = seen.count(e.to) > 0;
      }
      gw = to_side_twisted ? shift(edge_word(e.from_image, power), fp.vertex_offset.at(e.from))
                           : shift(edge_word(e.to_image, power), fp.vertex_offset.at(e.to));
    } else {
      gw = shift(edge_word(e.from_image, power), fp.vertex_offset.at(e.from));
    }
    auto out = twist_by(g, fp, edge, gw, twisted_vertex);
    out.id += "^" + to_string(power);
    return out;
  }

  Automorphism dehn_twist(GraphOfGroups const& g, FundamentalPresentation const& fp, int edge,
                          Word const& twist, int twisted_vertex) {
    auto const& e = g.edge(edge);
    if (!twist.empty()) {
      bool ok = false;
      for (auto const& [side, imgs] : {std::pair{e.from, &e.from_image}, std::pair{e.to, &e.to_image}}) {
        auto const& v   = g.vertex(side);
        int         off = fp.vertex_offset.at(side);
        bool        inside = true;
        for (Letter l : twist) {
          inside = inside && gen_of(l) >= off && gen_of(l) < off + static_cast<int>(v.group.rank());
        }
        if (!inside) {
          continue;
        }
        bool all = true;
        for (auto const& w : *imgs) {
          all = all && group_commutes(v.group, shift(w, off), twist);
        }
        ok = ok || all;
      }
      if (!ok) {
        throw std::invalid_argument("twist element does not centralize the edge group");
      }
    }
    return twist_by(g, fp, edge, twist, twisted_vertex);
  }

  IntMatrix inverse_unimodular(IntMatrix const& m) {
    if (!is_unimodular(m)) {
      throw std::invalid_argument("matrix is not unimodular");
    }
    // M U = H = I
    return hnf(m).U;
  }

  std::vector<Automorphism> modular_generators(Gad const& gad, int base_vertex) {
    auto const& g    = gad.gog;
    auto        tree = maximal_subtree(g);
    auto        fp   = fundamental_presentation(g, tree);
    auto const& P    = fp.presentation;
    std::size_t n    = P.rank();
    auto        id_images = [&] {
      std::vector<Word> imgs;
      for (std::size_t i = 0; i < n; ++i) {
        imgs.push_back(Word::gen(static_cast<int>(i)));
      }
      return imgs;
    };
    std::vector<Automorphism> out;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<Word> imgs;
      for (std::size_t i = 0; i < n; ++i) {
        imgs.push_back(conjugate(Word::gen(static_cast<int>(x)), Word::gen(static_cast<int>(i))));
      }
      out.push_back({"inner-" + P.generators.name(x), Morphism(n, imgs)});
    }
    for (auto const& v : g.vertices()) {
      if (gad.type.at(v.id) != VertexType::Abelian) {
        continue;
      }
      std::size_t k   = v.group.rank();
      int         off = fp.vertex_offset.at(v.id);
      auto        per = peripheral_subgroup(gad, v.id);
      std::size_t r   = per.closure.rank();
      IntMatrix   M   = IntMatrix::identity(k);
      if (r > 0) {
        M = inverse_unimodular(snf(per.closure.basis()).L);
      }
      IntMatrix Minv = inverse_unimodular(M);
      auto      emit = [&](std::string const& id, IntMatrix const& E) {
        IntMatrix A    = M * E * Minv;
        auto      imgs = id_images();
        for (std::size_t l = 0; l < k; ++l) {
          Word wl;
          for (std::size_t i = 0; i < k; ++i) {
            wl *= Word::gen(off + static_cast<int>(i), A(i, l).convert_to<long long>());
          }
          imgs[static_cast<std::size_t>(off) + l] = wl;
        }
        out.push_back({"abelian-" + std::to_string(v.id) + "-" + id, Morphism(n, imgs)});
      };
      for (std::size_t j = r; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
          if (i == j) {
            continue;
          }
          IntMatrix E = IntMatrix::identity(k);
          E(i, j)     = 1;
          emit("T" + std::to_string(i + 1) + std::to_string(j + 1), E);
        }
        IntMatrix D = IntMatrix::identity(k);
        D(j, j)     = -1;
        emit("N" + std::to_string(j + 1), D);
      }
    }
    for (auto const& e : g.edges()) {
      // twist the side away from the base vertex
      int twisted = e.to;
      if (tree.count(e.id)) {
        std::set<int> rest = tree;
        rest.erase(e.id);
        auto            adj = adjacency(g);
        std::set<int>   seen{base_vertex};
        std::deque<int> q{base_vertex};
        while (!q.empty()) {
          int u = q.front();
          q.pop_front();
          for (auto const& a : adj[u]) {
            if (rest.count(a.edge) && seen.insert(a.other).second) {
              q.push_back(a.other);
            }
          }
        }
        twisted = seen.count(e.to) ? e.from : e.to;
      }
      for (std::size_t c = 0; c < e.rank; ++c) {
        IntVec pw(e.rank, 0);
        pw[c] = 1;
        out.push_back(dehn_twist(g, fp, e.id, pw, twisted));
      }
    }
    for (auto const& v : g.vertices()) {
      if (gad.type.at(v.id) != VertexType::Surface) {
        continue;
      }
      auto const& s   = gad.surface.at(v.id);
      int         off = fp.vertex_offset.at(v.id);
      for (int h = 0; h < static_cast<int>(s.genus); ++h) {
        for (auto [a, b] : {std::pair{2 * h, 2 * h + 1}, std::pair{2 * h + 1, 2 * h}}) {
          std::vector<Word> local;
          for (std::size_t i = 0; i < v.group.rank(); ++i) {
            local.push_back(Word::gen(static_cast<int>(i)));
          }
          local[static_cast<std::size_t>(a)] = Word::gen(a) * Word::gen(b);
          Morphism tw(v.group.rank(), local);
          bool     fixes = true;
          for (auto const& bw : s.boundary) {
            fixes = fixes && tw(bw) == bw;
          }
          if (!fixes) {
            continue;
          }
          auto imgs = id_images();
          imgs[static_cast<std::size_t>(off + a)] = Word::gen(off + a) * Word::gen(off + b);
          out.push_back({"surface-" + std::to_string(v.id) + "-" + v.group.generators.name(static_cast<std::size_t>(a)),
                         Morphism(n, imgs)});
        }
      }
    }
    return out;
  }

  Tri GogDecider::decide(Word const& w) const {
    return decide_trivial(structure, to_structure(w), false).status;
  }

  std::optional<GogDecider> gog_decider(GraphOfGroups const& g, FundamentalPresentation const& fp) {
    auto const& first = g.vertex(root_of(g));
    if (!first.group.relators.empty()) {
      return std::nullopt;
    }
    for (auto const& e : g.edges()) {
      if (e.rank != 1) {
        return std::nullopt;
      }
    }
    auto const&      names = fp.presentation.generators;
    std::size_t      n     = names.rank();
    std::vector<int> pos(n, -1);
    auto             place = [&](int v, int at) {
      int off = fp.vertex_offset.at(v);
      for (std::size_t k = 0; k < g.vertex(v).group.rank(); ++k) {
        pos[static_cast<std::size_t>(off) + k] = at + static_cast<int>(k);
      }
    };
    auto translate = [&](Word const& w) {
      std::vector<Letter> raw;
      for (Letter l : w) {
        int p = pos[static_cast<std::size_t>(gen_of(l))];
        if (p < 0) {
          throw std::logic_error("decider: generator not placed yet");
        }
        raw.push_back(letter(p, l > 0 ? 1 : -1));
      }
      return Word(raw);
    };
    StructureBuilder b(first.group.generators);
    place(first.id, 0);
    auto paths = tree_paths(g, fp.tree);
    std::vector<std::pair<std::size_t, int>> order;
    for (auto const& [v, p] : paths) {
      if (v != first.id) {
        order.emplace_back(p.size(), v);
      }
    }
    std::sort(order.begin(), order.end());
    for (auto const& [depth, v] : order) {
      auto const& vx   = g.vertex(v);
      auto [edge, dir] = paths[v].back();
      auto const& e    = g.edge(edge);
      int         u    = dir > 0 ? e.from : e.to;
      Word        img_u = shift(dir > 0 ? e.from_image[0] : e.to_image[0], fp.vertex_offset.at(u));
      Word        img_v = dir > 0 ? e.to_image[0] : e.from_image[0];
      Word        lower = translate(img_u);
      int         at    = static_cast<int>(b.rank());
      std::vector<std::string> vn = vx.group.generators.names();
      if (vx.group.relators.empty()) {
        place(v, at);
        b.add_amalgam(vn, shift(img_v, at), lower);
        continue;
      }
      if (!is_free_abelian_presentation(vx.group)) {
        return std::nullopt;
      }
      std::size_t k  = vx.group.rank();
      IntVec      vv = exponent_vector(img_v, k);
      std::optional<std::size_t> j;
      for (std::size_t i = 0; i < k && !j; ++i) {
        if (vv[i] == 1 || vv[i] == -1) {
          j = i;
        }
      }
      if (!j) {
        return std::nullopt;
      }
      long long sj = vv[*j].convert_to<long long>();
      std::vector<int>                    slots;
      std::vector<std::vector<long long>> vecs(k);
      for (std::size_t i = 0; i < k; ++i) {
        if (i != *j) {
          slots.push_back(static_cast<int>(i));
        }
      }
      vecs[*j].push_back(sj);
      for (int s : slots) {
        vecs[*j].push_back(-sj * vv[static_cast<std::size_t>(s)].convert_to<long long>());
      }
      for (std::size_t q = 0; q < slots.size(); ++q) {
        std::vector<long long> unit(slots.size() + 1, 0);
        unit[q + 1] = 1;
        vecs[static_cast<std::size_t>(slots[q])] = unit;
      }
      place(v, at);
      b.add_abelian(lower, vn, slots, vecs);
    }
    for (auto const& [e, t] : fp.stable_letter) {
      auto const& ed = g.edge(e);
      Word        a  = translate(shift(ed.from_image[0], fp.vertex_offset.at(ed.from)));
      Word        c  = translate(shift(ed.to_image[0], fp.vertex_offset.at(ed.to)));
      pos[static_cast<std::size_t>(t)] = static_cast<int>(b.rank());
      b.add_hnn(names.name(static_cast<std::size_t>(t)), a, c);
    }
    std::vector<Word> imgs;
    for (std::size_t i = 0; i < n; ++i) {
      imgs.push_back(Word::gen(pos[i]));
    }
    GogDecider d{b.take(), Morphism(n, imgs)};
    for (auto const& r : fp.presentation.relators) {
      if (d.decide(r) != Tri::Yes) {
        throw std::logic_error("decider does not present the fundamental group");
      }
    }
    return d;
  }

  MorphismCheck check_automorphism(Morphism const& m, Presentation const& p, GogDecider const* exact,
                                   SearchOptions const& opts) {
    MorphismCheck out;
    out.status = MorphismCheck::Status::Pass;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      Word img = m(p.relators[i]);
      if (img.empty()) {
        continue;
      }
      if (exact) {
        Tri d = exact->decide(img);
        if (d == Tri::Yes) {
          continue;
        }
        if (d == Tri::No) {
          out.status = MorphismCheck::Status::Fail;
          out.failed = static_cast<int>(i);
          return out;
        }
      }
      if (!search_trivial(p.relators, img, opts)) {
        out.status = MorphismCheck::Status::Unknown;
        out.failed = static_cast<int>(i);
        return out;
      }
    }
    return out;
  }

}  // namespace bsw
