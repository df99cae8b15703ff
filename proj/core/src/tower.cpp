#include "bsw/tower.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bsw {

  std::size_t Flat::generator_count() const {
    switch (kind) {
      case Kind::Abelian:
        return closure ? 2 * rank : rank;
      case Kind::Surface:
        return 2 * genus + (boundary.empty() ? 0 : boundary.size() - 1);
      default:
        return rank;
    }
  }

  namespace {

    Word handle_product(std::size_t genus, int lo) {
      Word p;
      for (std::size_t i = 0; i < genus; ++i) {
        int a = lo + 2 * static_cast<int>(i);
        p *= commutator(Word::gen(a), Word::gen(a + 1));
      }
      return p;
    }

    Word boundary_product(Flat const& f, int lo) {
      Word b = f.boundary.at(0);
      for (std::size_t j = 1; j < f.boundary.size(); ++j) {
        int t = lo + 2 * static_cast<int>(f.genus) + static_cast<int>(j) - 1;
        b *= conjugate(Word::gen(t), f.boundary[j]);
      }
      return b;
    }

    Word surface_relator(Flat const& f, int lo) {
      return handle_product(f.genus, lo) * boundary_product(f, lo).inverse();
    }

    long long to_ll(Int const& v) {
      return v.convert_to<long long>();
    }

    std::vector<Word> flat_retraction(Flat const& f) {
      std::vector<Word> out;
      switch (f.kind) {
        case Flat::Kind::Abelian: {
          if (!f.closure) {
            out.assign(f.rank, f.peg);
            break;
          }
          auto const& c = *f.closure;
          for (std::size_t i = 0; i < f.rank; ++i) {
            Int e = c.peg_col[i];
            for (std::size_t j = 0; j < f.rank; ++j) {
              e += c.K(i, j) * f.retract_exp.at(j);
            }
            out.push_back(f.peg.pow(to_ll(e)));
          }
          for (std::size_t j = 0; j < f.rank; ++j) {
            out.push_back(f.peg.pow(to_ll(f.retract_exp.at(j))));
          }
          break;
        }
        case Flat::Kind::Surface:
          out = f.images;
          break;
        default:
          out.assign(f.rank, Word());
          break;
      }
      return out;
    }

    void check_words(Flat const& f, std::size_t lower, std::string const& where) {
      auto in_range = [&](Word const& w, std::size_t n) {
        return w.uses_only_below(static_cast<int>(n));
      };
      if (f.names.size() != f.generator_count()) {
        throw TowerError("shape", where + ": expected " + std::to_string(f.generator_count())
                                      + " generator names");
      }
      switch (f.kind) {
        case Flat::Kind::Abelian:
          if (f.rank == 0) {
            throw TowerError("shape", where + ": abelian flat of rank 0");
          }
          if (f.peg.empty()) {
            throw TowerError("peg nontrivial", where + ": identity peg");
          }
          if (!in_range(f.peg, lower)) {
            throw TowerError("shape", where + ": peg outside the lower level");
          }
          if (f.closure) {
            if (f.closure->rank() != f.rank || f.closure->K.rows() != f.rank
                || f.closure->K.cols() != f.rank || f.retract_exp.size() != f.rank) {
              throw TowerError("shape", where + ": closure data of wrong size");
            }
            if (!f.closure->finite_index()) {
              throw TowerError("finite index", where + ": closure embedding of infinite index");
            }
          }
          break;
        case Flat::Kind::Surface: {
          if (f.boundary.empty()) {
            throw TowerError("shape", where + ": surface without boundary");
          }
          if (2 * f.genus + f.boundary.size() < 3) {
            throw TowerError("shape", where + ": surface must have negative Euler characteristic");
          }
          for (auto const& b : f.boundary) {
            if (b.empty() || !in_range(b, lower)) {
              throw TowerError("shape", where + ": boundary word outside the lower level");
            }
          }
          if (f.images.size() != f.generator_count()) {
            throw TowerError("shape", where + ": one retraction image per surface generator");
          }
          for (auto const& w : f.images) {
            if (!in_range(w, lower + (f.cyclic_exception ? 1 : 0))) {
              throw TowerError("shape", where + ": retraction image outside the lower level");
            }
          }
          int n = static_cast<int>(f.generator_count());
          for (auto [a, b] : f.twists) {
            if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
              throw TowerError("shape", where + ": twist refers to a missing generator");
            }
          }
          break;
        }
        default:
          if (f.rank == 0) {
            throw TowerError("shape", where + ": free factor of rank 0");
          }
      }
    }

    GroupStructure with_fresh(GroupStructure g) {
      Step s;
      s.kind   = Step::Kind::Free;
      s.lo     = static_cast<int>(g.rank());
      s.rel_lo = s.rel_hi = g.relators().size();
      g.presentation.generators.add(kFreshLetter);
      s.hi = s.lo + 1;
      g.steps.push_back(s);
      if (g.to_base) {
        auto imgs = g.to_base->images();
        imgs.emplace_back();
        g.to_base = Morphism(g.to_base->target_rank(), imgs);
      }
      return g;
    }

    Tri from_decision(Tri trivial) {
      // a check that holds when the word is non-trivial
      if (trivial == Tri::No) {
        return Tri::Yes;
      }
      return trivial == Tri::Yes ? Tri::No : Tri::Unknown;
    }

    // Decision on non-triviality backed by witnesses when the engine is stuck.
    Tri nontrivial(GroupStructure const& g, Word const& w,
                   std::vector<NamedMorphism> const& witnesses) {
      auto d = decide_trivial(g, w, false);
      if (d.status != Tri::Unknown) {
        return from_decision(d.status);
      }
      for (auto const& m : witnesses) {
        if (m.map.source_rank() >= g.rank() && !m.map(w).empty()) {
          return Tri::Yes;
        }
      }
      return Tri::Unknown;
    }

  }  // namespace

  std::vector<Word> surface_twist(Flat const& f, int lo, long long power) {
    int               n = static_cast<int>(f.generator_count());
    std::vector<Word> img;
    for (int i = 0; i < n; ++i) {
      img.push_back(Word::gen(lo + i));
    }
    if (power == 0 || f.twists.empty()) {
      return img;
    }
    // img[i] is the image of the i-th flat generator; an elementary twist
    // a -> a b (or a b^-1 for negative powers) is applied after the current map
    auto apply = [&](int a, int b, int sign) {
      std::map<int, Word> sub;
      sub[lo + a] = Word::gen(lo + a) * Word::gen(lo + b, sign);
      for (auto& w : img) {
        Word out;
        for (Letter l : w) {
          auto it = sub.find(gen_of(l));
          Word x  = it == sub.end() ? Word::gen(gen_of(l)) : it->second;
          out *= l > 0 ? x : x.inverse();
        }
        w = out;
      }
    };
    long long steps = power > 0 ? power : -power;
    for (long long s = 0; s < steps; ++s) {
      if (power > 0) {
        for (auto [a, b] : f.twists) {
          apply(a, b, 1);
        }
      } else {
        for (auto it = f.twists.rbegin(); it != f.twists.rend(); ++it) {
          apply(it->first, it->second, -1);
        }
      }
    }
    return img;
  }

  Tower::Tower(Basis base, std::vector<Floor> floors)
      : _base(std::move(base)), _floors(std::move(floors)) {
    if (_base.rank() == 0) {
      throw TowerError("shape", "base of rank 0");
    }
    StructureBuilder b(_base);
    _level_rank.push_back(_base.rank());
    _level_steps.push_back(0);
    _refs.emplace_back();
    std::set<std::string> ids;
    for (std::size_t i = 0; i < _floors.size(); ++i) {
      auto const& fl    = _floors[i];
      std::size_t lower = b.rank();
      if (fl.flats.empty()) {
        throw TowerError("shape", "floor " + std::to_string(i + 1) + " is empty");
      }
      std::vector<FlatRef> refs;
      for (std::size_t k = 0; k < fl.flats.size(); ++k) {
        auto const& f     = fl.flats[k];
        std::string where = "flat " + (f.id.empty() ? std::to_string(k) : f.id);
        check_words(f, lower, where);
        if (f.id.empty() || !ids.insert(f.id).second) {
          throw TowerError("shape", where + ": missing or duplicate flat id");
        }
        int lo = static_cast<int>(b.rank());
        try {
          switch (f.kind) {
            case Flat::Kind::Abelian: {
              std::size_t                         m = f.rank;
              std::vector<std::vector<long long>> vecs;
              std::vector<int>                    slots;
              if (!f.closure) {
                for (std::size_t j = 0; j < m; ++j) {
                  std::vector<long long> v(m + 1, 0);
                  v[j + 1] = 1;
                  vecs.push_back(v);
                  slots.push_back(static_cast<int>(j));
                }
              } else {
                for (std::size_t r = 0; r < m; ++r) {
                  std::vector<long long> v{to_ll(f.closure->peg_col[r])};
                  for (std::size_t j = 0; j < m; ++j) {
                    v.push_back(to_ll(f.closure->K(r, j)));
                  }
                  vecs.push_back(v);
                }
                for (std::size_t j = 0; j < m; ++j) {
                  std::vector<long long> v(m + 1, 0);
                  v[j + 1] = 1;
                  vecs.push_back(v);
                  slots.push_back(static_cast<int>(m + j));
                }
              }
              b.add_abelian(f.peg, f.names, slots, vecs);
              break;
            }
            case Flat::Kind::Surface:
              if (f.boundary.size() == 1) {
                b.add_amalgam(f.names, handle_product(f.genus, lo), f.boundary[0]);
              } else {
                b.add_opaque(f.names, {surface_relator(f, lo)});
              }
              break;
            default:
              b.add_free(f.names);
          }
        } catch (TowerError const&) {
          throw;
        } catch (std::invalid_argument const& e) {
          throw TowerError("shape", where + ": " + e.what());
        }
        refs.push_back({i + 1, k, lo, static_cast<int>(b.rank())});
      }
      _refs.push_back(refs);
      _level_rank.push_back(b.rank());
      _level_steps.push_back(b.structure().steps.size());
    }
    _g = b.take();
    _g.to_base = to_base();
  }

  std::size_t Tower::rank_at(std::size_t level) const {
    return _level_rank.at(level);
  }

  Basis Tower::basis_at(std::size_t level) const {
    auto const& n = names().names();
    return Basis(std::vector<std::string>(n.begin(), n.begin() + static_cast<long>(rank_at(level))));
  }

  Presentation Tower::presentation_at(std::size_t level) const {
    return prefix(_g, _level_steps.at(level)).presentation;
  }

  GroupStructure Tower::structure_at(std::size_t level) const {
    return prefix(_g, _level_steps.at(level));
  }

  Morphism Tower::retraction_at(std::size_t level) const {
    if (level == 0 || level > height()) {
      throw std::out_of_range("retraction level out of range");
    }
    std::size_t lower = rank_at(level - 1);
    bool        fresh = false;
    for (auto const& f : _floors[level - 1].flats) {
      fresh = fresh || (f.kind == Flat::Kind::Surface && f.cyclic_exception);
    }
    std::vector<Word> imgs;
    for (std::size_t g = 0; g < lower; ++g) {
      imgs.push_back(Word::gen(static_cast<int>(g)));
    }
    for (auto const& f : _floors[level - 1].flats) {
      auto r = flat_retraction(f);
      imgs.insert(imgs.end(), r.begin(), r.end());
    }
    return Morphism(lower + (fresh ? 1 : 0), imgs);
  }

  Morphism Tower::retraction_down(std::size_t level) const {
    Morphism    r     = retraction_at(level);
    std::size_t lower = rank_at(level - 1);
    if (r.target_rank() == lower) {
      return r;
    }
    std::vector<Word> kill;
    for (std::size_t g = 0; g < lower; ++g) {
      kill.push_back(Word::gen(static_cast<int>(g)));
    }
    kill.emplace_back();
    return compose(Morphism(lower, kill), r);
  }

  Morphism Tower::to_base() const {
    return twisted_to_base(0);
  }

  Morphism Tower::twisted_to_base(long long n) const {
    Morphism    acc   = Morphism::identity(rank_at(0));
    std::size_t which = 0;
    for (std::size_t level = 1; level <= height(); ++level) {
      Morphism r = retraction_down(level);
      if (n != 0) {
        for (auto const& ref : _refs[level]) {
          auto const& f = flat(ref);
          if (f.kind != Flat::Kind::Surface) {
            continue;
          }
          ++which;
          auto tw = surface_twist(f, ref.lo, n * static_cast<long long>(which));
          std::vector<Word> imgs;
          for (auto const& w : tw) {
            imgs.push_back(r(w));
          }
          for (int g = ref.lo; g < ref.hi; ++g) {
            r.set_image(static_cast<std::size_t>(g), imgs[static_cast<std::size_t>(g - ref.lo)]);
          }
        }
      }
      acc = compose(acc, r);
    }
    return acc;
  }

  std::vector<NamedMorphism> Tower::witnesses(int twisted) const {
    std::vector<NamedMorphism> out{{"retraction", to_base()}};
    bool any = false;
    for (auto const& fl : _floors) {
      for (auto const& f : fl.flats) {
        any = any || (f.kind == Flat::Kind::Surface && !f.twists.empty());
      }
    }
    if (any) {
      for (int n = 1; n <= twisted; ++n) {
        out.push_back({"twist-" + std::to_string(n), twisted_to_base(n)});
      }
    }
    return out;
  }

  std::vector<FlatRef> Tower::flats() const {
    std::vector<FlatRef> out;
    for (auto const& level : _refs) {
      out.insert(out.end(), level.begin(), level.end());
    }
    return out;
  }

  Flat const& Tower::flat(FlatRef const& r) const {
    return _floors.at(r.floor - 1).flats.at(r.index);
  }

  std::optional<FlatRef> Tower::find_flat(std::string const& id) const {
    for (auto const& r : flats()) {
      if (flat(r).id == id) {
        return r;
      }
    }
    return std::nullopt;
  }

  Tower new_tower(std::size_t base_rank) {
    if (base_rank == 0) {
      throw TowerError("shape", "base of rank 0");
    }
    return Tower(Basis::numbered("e", base_rank), {});
  }

  Tower new_tower(Basis base) {
    return Tower(std::move(base), {});
  }

  std::vector<std::string> fresh_names(Basis const& taken, std::string const& prefix,
                                       std::size_t n, std::vector<std::string> const& also) {
    std::vector<std::string> out;
    for (std::size_t k = 1; out.size() < n; ++k) {
      std::string c = prefix + std::to_string(k);
      if (taken.index_of(c) || std::find(also.begin(), also.end(), c) != also.end()) {
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  namespace {
    std::string fresh_id(Tower const& t) {
      std::set<std::string> used;
      for (auto const& r : t.flats()) {
        used.insert(t.flat(r).id);
      }
      for (std::size_t k = used.size() + 1;; ++k) {
        std::string c = "F" + std::to_string(k);
        if (!used.count(c)) {
          return c;
        }
      }
    }
  }  // namespace

  Flat make_abelian_flat(Tower const& t, AbelianFlatSpec const& spec) {
    Flat f;
    f.kind  = Flat::Kind::Abelian;
    f.peg   = spec.peg;
    f.rank  = spec.rank;
    f.id    = spec.id.empty() ? fresh_id(t) : spec.id;
    f.names = spec.names.empty() ? fresh_names(t.names(), "z", spec.rank) : spec.names;
    return f;
  }

  Flat make_surface_flat(Tower const& t, SurfaceFlatSpec const& spec) {
    Flat f;
    f.kind             = Flat::Kind::Surface;
    f.genus            = spec.genus;
    f.boundary         = spec.boundary;
    f.images           = spec.images;
    f.cyclic_exception = spec.cyclic_exception;
    f.id               = spec.id.empty() ? fresh_id(t) : spec.id;
    if (spec.names.empty()) {
      f.names  = fresh_names(t.names(), "x", 2 * spec.genus);
      auto ts  = fresh_names(t.names(), "t", spec.boundary.empty() ? 0 : spec.boundary.size() - 1);
      f.names.insert(f.names.end(), ts.begin(), ts.end());
    } else {
      f.names = spec.names;
    }
    if (spec.twists.empty()) {
      for (int i = 0; i < static_cast<int>(spec.genus); ++i) {
        f.twists.emplace_back(2 * i, 2 * i + 1);
        f.twists.emplace_back(2 * i + 1, 2 * i);
      }
    } else {
      f.twists = spec.twists;
    }
    return f;
  }

  Flat make_free_flat(Tower const& t, std::size_t rank, std::vector<std::string> names) {
    Flat f;
    f.kind  = Flat::Kind::Free;
    f.rank  = rank;
    f.id    = fresh_id(t);
    f.names = names.empty() ? fresh_names(t.names(), "f", rank) : std::move(names);
    return f;
  }

  Tower glue_floor(Tower const& t, std::vector<Flat> flats) {
    auto floors = t.floors();
    floors.push_back(Floor{std::move(flats)});
    Tower out(t.base(), std::move(floors));
    auto  rep = validate_floor(out, out.height());
    if (auto const* c = rep.first_failure()) {
      throw TowerError(c->name, c->detail);
    }
    return out;
  }

  Tower glue_free_factor(Tower const& t, std::size_t rank, std::vector<std::string> names) {
    if (rank == 0) {
      throw TowerError("shape", "free factor of rank 0");
    }
    return glue_floor(t, {make_free_flat(t, rank, std::move(names))});
  }

  Tower glue_abelian_flat(Tower const& t, AbelianFlatSpec const& spec) {
    return glue_floor(t, {make_abelian_flat(t, spec)});
  }

  Tower glue_surface_flat(Tower const& t, SurfaceFlatSpec const& spec) {
    return glue_floor(t, {make_surface_flat(t, spec)});
  }

  Tri ValidityReport::overall() const {
    Tri out = Tri::Yes;
    for (auto const& c : checks) {
      if (c.status == Tri::No) {
        return Tri::No;
      }
      if (c.status == Tri::Unknown) {
        out = Tri::Unknown;
      }
    }
    return out;
  }

  Check const* ValidityReport::first_failure() const {
    for (auto const& c : checks) {
      if (c.status == Tri::No) {
        return &c;
      }
    }
    return nullptr;
  }

  Check const* ValidityReport::first_unknown() const {
    for (auto const& c : checks) {
      if (c.status == Tri::Unknown) {
        return &c;
      }
    }
    return nullptr;
  }

  namespace {

    bool base_word(Tower const& t, Word const& w) {
      return w.uses_only_below(static_cast<int>(t.base().rank()));
    }

    Tri peg_is_maximal(Tower const& t, Word const& peg) {
      if (base_word(t, peg)) {
        auto core = cyclic_decompose(peg).core;
        return primitive_root(core).second == 1 ? Tri::Yes : Tri::No;
      }
      Word img = t.to_base()(peg);
      if (img.empty()) {
        return Tri::Unknown;
      }
      return primitive_root(cyclic_decompose(img).core).second == 1 ? Tri::Yes : Tri::Unknown;
    }

    // Yes when the carriers of the two pegs are certainly not conjugate.
    Tri carriers_apart(Tower const& t, Word const& p1, Word const& p2,
                       std::vector<NamedMorphism> const& witnesses) {
      if (base_word(t, p1) && base_word(t, p2)) {
        return peg_carrier_conjugacy(p1, p2) ? Tri::No : Tri::Yes;
      }
      for (auto const& m : witnesses) {
        Word a = m.map(p1), b = m.map(p2);
        if (!a.empty() && !b.empty() && !peg_carrier_conjugacy(a, b)) {
          return Tri::Yes;
        }
      }
      return Tri::Unknown;
    }

  }  // namespace

  ValidityReport validate_floor(Tower const& t, std::size_t level) {
    ValidityReport rep;
    if (level == 0 || level > t.height()) {
      throw std::out_of_range("floor out of range");
    }
    auto lower     = t.structure_at(level - 1);
    auto witnesses = t.witnesses();
    auto names     = t.names();
    auto fmt       = [&](Word const& w) {
      return format_word(w, names);
    };
    std::vector<std::pair<std::string, Word>> earlier_pegs;
    for (auto const& ref : t.flats()) {
      if (ref.floor > level) {
        break;
      }
      auto const& f = t.flat(ref);
      if (f.kind != Flat::Kind::Abelian) {
        continue;
      }
      if (ref.floor < level) {
        earlier_pegs.emplace_back(f.id, f.peg);
        continue;
      }
      std::string tag = " [" + f.id + "]";
      rep.checks.push_back({"peg nontrivial" + tag, nontrivial(lower, f.peg, witnesses),
                            fmt(f.peg)});
      rep.checks.push_back({"peg maximal" + tag, peg_is_maximal(t, f.peg),
                            "root of " + fmt(f.peg)});
      for (auto const& [id, p] : earlier_pegs) {
        rep.checks.push_back({"peg carriers" + tag + " vs " + id,
                              carriers_apart(t, f.peg, p, witnesses),
                              fmt(f.peg) + " / " + fmt(p)});
      }
      earlier_pegs.emplace_back(f.id, f.peg);
    }
    auto const& refs = t.flats();
    for (auto const& ref : refs) {
      if (ref.floor != level) {
        continue;
      }
      auto const& f = t.flat(ref);
      if (f.kind != Flat::Kind::Surface) {
        continue;
      }
      std::string tag  = " [" + f.id + "]";
      auto        tgt  = f.cyclic_exception ? with_fresh(lower) : lower;
      for (auto const& b : f.boundary) {
        rep.checks.push_back({"boundary nontrivial" + tag, nontrivial(lower, b, witnesses), fmt(b)});
      }
      std::vector<Word> const& imgs = f.images;
      Word                     rel  = surface_relator(f, ref.lo);
      std::vector<Word> local(static_cast<std::size_t>(ref.hi), Word());
      for (std::size_t g = 0; g < t.rank_at(level - 1); ++g) {
        local[g] = Word::gen(static_cast<int>(g));
      }
      for (int g = ref.lo; g < ref.hi; ++g) {
        local[static_cast<std::size_t>(g)] = f.images[static_cast<std::size_t>(g - ref.lo)];
      }
      Morphism rho(tgt.rank(), local);
      auto     d = decide_trivial(tgt, rho(rel), false);
      rep.checks.push_back({"retraction relator" + tag,
                            d.status == Tri::Yes ? Tri::Yes
                            : d.status == Tri::No ? Tri::No
                                                  : Tri::Unknown,
                            "image of the surface relator"});
      Tri nonab = Tri::No;
      for (std::size_t i = 0; i < imgs.size() && nonab != Tri::Yes; ++i) {
        for (std::size_t j = i + 1; j < imgs.size() && nonab != Tri::Yes; ++j) {
          Tri s = nontrivial(tgt, commutator(imgs[i], imgs[j]), {});
          if (s == Tri::Yes || (s == Tri::Unknown && nonab == Tri::No)) {
            nonab = s;
          }
        }
      }
      rep.checks.push_back({"non-abelian image" + tag, nonab, "retraction images"});
      auto tw = surface_twist(f, ref.lo, 1);
      std::vector<Word> full(static_cast<std::size_t>(ref.hi));
      for (int g = 0; g < ref.hi; ++g) {
        full[static_cast<std::size_t>(g)] = Word::gen(g);
      }
      for (int g = ref.lo; g < ref.hi; ++g) {
        full[static_cast<std::size_t>(g)] = tw[static_cast<std::size_t>(g - ref.lo)];
      }
      bool twist_ok = Morphism(static_cast<std::size_t>(ref.hi), full)(rel) == rel;
      rep.checks.push_back({"twists fix the relator" + tag, twist_ok ? Tri::Yes : Tri::No,
                            std::to_string(f.twists.size()) + " twists"});
    }
    auto  r   = t.retraction_at(level);
    bool  fr  = r.target_rank() > t.rank_at(level - 1);
    auto  chk = check_morphism(r, t.presentation_at(level), fr ? with_fresh(lower) : lower);
    Tri   st  = chk.status == MorphismCheck::Status::Pass   ? Tri::Yes
                : chk.status == MorphismCheck::Status::Fail ? Tri::No
                                                            : Tri::Unknown;
    rep.checks.push_back({"retraction " + std::to_string(level), st, to_string(chk)});
    return rep;
  }

  ValidityReport validate_tower(Tower const& t) {
    ValidityReport rep;
    for (std::size_t level = 1; level <= t.height(); ++level) {
      auto f = validate_floor(t, level);
      rep.checks.insert(rep.checks.end(), f.checks.begin(), f.checks.end());
    }
    Morphism rho = t.to_base();
    bool     ok  = true;
    for (auto const& r : t.presentation().relators) {
      ok = ok && rho(r).empty();
    }
    rep.checks.push_back({"composite retraction", ok ? Tri::Yes : Tri::No,
                          "relators of the top level sent to 1"});
    return rep;
  }

  OrderingCertificate check_legitimate_ordering(Tower const& t,
                                                std::vector<std::size_t> const& perm) {
    auto refs = t.flats();
    std::vector<std::size_t> sorted(perm);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) {
        sorted.clear();
      }
    }
    if (sorted.size() != refs.size()) {
      throw std::invalid_argument("ordering must list every flat exactly once");
    }
    OrderingCertificate cert;
    cert.legitimate = true;
    std::vector<bool> allowed(t.names().rank(), false);
    for (std::size_t g = 0; g < t.base().rank(); ++g) {
      allowed[g] = true;
    }
    for (std::size_t pos = 0; pos < perm.size(); ++pos) {
      auto const& ref  = refs[perm[pos]];
      auto const& f    = t.flat(ref);
      auto        r    = t.retraction_at(ref.floor);
      std::size_t fr   = t.rank_at(ref.floor - 1);
      std::string bad;
      for (int g = ref.lo; g < ref.hi && bad.empty(); ++g) {
        for (Letter l : r.image(static_cast<std::size_t>(g))) {
          auto x = static_cast<std::size_t>(gen_of(l));
          if (!(r.target_rank() > fr && x == fr) && !allowed[x]) {
            bad = t.names().name(static_cast<std::size_t>(g)) + " -> uses "
                  + t.names().name(x);
            break;
          }
        }
      }
      if (!bad.empty()) {
        cert.legitimate = false;
        cert.failed     = pos;
        cert.lines.push_back(f.id + ": not legitimate (" + bad + ")");
        return cert;
      }
      cert.lines.push_back(f.id + ": ok");
      for (int g = ref.lo; g < ref.hi; ++g) {
        allowed[static_cast<std::size_t>(g)] = true;
      }
    }
    return cert;
  }

  namespace {

    // Flats regrouped into floors given as lists of positions in t.flats().
    // Groups of free flats are merged into one free flat.
    Renaming regroup(Tower const& t, std::vector<std::vector<std::size_t>> const& groups) {
      auto                    refs = t.flats();
      std::size_t             n    = t.names().rank();
      std::vector<int>        pos(n, -1);
      std::vector<std::string> names(t.base().names());
      for (std::size_t g = 0; g < t.base().rank(); ++g) {
        pos[g] = static_cast<int>(g);
      }
      for (auto const& grp : groups) {
        for (auto k : grp) {
          auto const& r = refs.at(k);
          for (int g = r.lo; g < r.hi; ++g) {
            pos[static_cast<std::size_t>(g)] = static_cast<int>(names.size());
            names.push_back(t.names().name(static_cast<std::size_t>(g)));
          }
        }
      }
      if (names.size() != n) {
        throw std::invalid_argument("regrouping must use every flat once");
      }
      std::vector<Word> fwd, bwd(n);
      for (std::size_t g = 0; g < n; ++g) {
        if (pos[g] < 0) {
          throw std::invalid_argument("regrouping must use every flat once");
        }
        fwd.push_back(Word::gen(pos[g]));
        bwd[static_cast<std::size_t>(pos[g])] = Word::gen(static_cast<int>(g));
      }
      Morphism forward(n, fwd), backward(n, bwd);

      std::vector<Floor> floors;
      std::size_t        below = t.base().rank();
      for (auto const& grp : groups) {
        Floor fl;
        bool  all_free = grp.size() > 1;
        for (auto k : grp) {
          all_free = all_free && t.flat(refs[k]).kind == Flat::Kind::Free;
        }
        std::size_t added = 0;
        for (auto k : grp) {
          auto const& r = refs[k];
          Flat        f = t.flat(r);
          auto        check = [&](Word const& w, bool fresh) {
            Word out;
            for (Letter l : w) {
              auto x = static_cast<std::size_t>(gen_of(l));
              Word y;
              if (fresh && x == t.rank_at(r.floor - 1)) {
                y = Word::gen(static_cast<int>(below));
              } else {
                if (pos[x] < 0 || static_cast<std::size_t>(pos[x]) >= below) {
                  throw TowerError("ordering", f.id + " uses a generator placed above it");
                }
                y = Word::gen(pos[x]);
              }
              out *= l > 0 ? y : y.inverse();
            }
            return out;
          };
          f.peg = check(f.peg, false);
          for (auto& b : f.boundary) {
            b = check(b, false);
          }
          for (auto& w : f.images) {
            w = check(w, f.cyclic_exception);
          }
          added += f.generator_count();
          if (all_free && !fl.flats.empty()) {
            auto& m = fl.flats.front();
            m.rank += f.rank;
            m.names.insert(m.names.end(), f.names.begin(), f.names.end());
          } else {
            fl.flats.push_back(std::move(f));
          }
        }
        below += added;
        floors.push_back(std::move(fl));
      }
      return {Tower(t.base(), std::move(floors)), forward, backward};
    }

  }  // namespace

  Renaming reorder_flats(Tower const& t, std::vector<std::size_t> const& perm) {
    auto cert = check_legitimate_ordering(t, perm);
    if (!cert.legitimate) {
      throw TowerError("ordering", cert.lines.back());
    }
    std::vector<std::vector<std::size_t>> groups;
    for (auto k : perm) {
      groups.push_back({k});
    }
    return regroup(t, groups);
  }

  Renaming normalize_convention(Tower const& t) {
    auto                                  refs = t.flats();
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t>              first;
    for (std::size_t k = 0; k < refs.size(); ++k) {
      auto const& f = t.flat(refs[k]);
      if (f.kind == Flat::Kind::Abelian && base_word(t, f.peg)) {
        first.push_back(k);
      }
    }
    if (!first.empty()) {
      groups.push_back(first);
    }
    bool prev_free = false;
    for (std::size_t k = 0; k < refs.size(); ++k) {
      if (std::find(first.begin(), first.end(), k) != first.end()) {
        continue;
      }
      bool is_free = t.flat(refs[k]).kind == Flat::Kind::Free;
      if (is_free && prev_free) {
        groups.back().push_back(k);
      } else {
        groups.push_back({k});
      }
      prev_free = is_free;
    }
    return regroup(t, groups);
  }

}  // namespace bsw
