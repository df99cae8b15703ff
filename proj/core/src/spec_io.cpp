#include "bsw/spec_io.hpp"

#include "json.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace bsw {

  namespace {

    using json  = nlohmann::json;
    using ojson = nlohmann::ordered_json;

    std::string key_path(std::string const& path, std::string const& key) {
      return path.empty() ? key : path + "." + key;
    }
    std::string index_path(std::string const& path, std::size_t i) {
      return path + "[" + std::to_string(i) + "]";
    }

    json parse_json(std::string_view text) {
      try {
        return json::parse(text.begin(), text.end());
      } catch (json::parse_error const& e) {
        throw SpecError("", std::string("JSON syntax: ") + e.what());
      }
    }

    void expect_object(json const& j, std::string const& path) {
      if (!j.is_object()) {
        throw SpecError(path, "expected an object");
      }
    }
    void expect_array(json const& j, std::string const& path) {
      if (!j.is_array()) {
        throw SpecError(path, "expected a list");
      }
    }

    void allow_keys(json const& j, std::string const& path, std::set<std::string> const& keys) {
      for (auto const& [k, v] : j.items()) {
        if (!keys.count(k)) {
          throw SpecError(key_path(path, k), "unknown key");
        }
      }
    }

    json const& need(json const& j, std::string const& key, std::string const& path) {
      auto it = j.find(key);
      if (it == j.end()) {
        throw SpecError(key_path(path, key), "missing");
      }
      return *it;
    }

    std::string get_string(json const& j, std::string const& path) {
      if (!j.is_string()) {
        throw SpecError(path, "expected a string");
      }
      return j.get<std::string>();
    }

    long long get_integer(json const& j, std::string const& path) {
      if (!j.is_number_integer()) {
        throw SpecError(path, "expected an integer");
      }
      if (j.is_number_unsigned()
          && j.get<unsigned long long>() > static_cast<unsigned long long>(std::numeric_limits<long long>::max())) {
        throw SpecError(path, "integer out of range");
      }
      return j.get<long long>();
    }

    std::size_t get_count(json const& j, std::string const& path) {
      long long v = get_integer(j, path);
      if (v < 0) {
        throw SpecError(path, "expected a non-negative integer");
      }
      return static_cast<std::size_t>(v);
    }

    // Integers beyond 64 bits are written as decimal strings.
    Int get_big(json const& j, std::string const& path) {
      if (j.is_number_integer()) {
        return Int(get_integer(j, path));
      }
      if (j.is_string()) {
        auto s = j.get<std::string>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
          throw SpecError(path, "expected an integer");
        }
        return Int(s);
      }
      throw SpecError(path, "expected an integer");
    }

    ojson put_big(Int const& v) {
      if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
        return ojson(static_cast<long long>(v));
      }
      return ojson(v.str());
    }

    Word get_word(json const& j, std::string const& path, Basis const& basis) {
      auto text = get_string(j, path);
      try {
        return parse_word(text, basis);
      } catch (ParseError const& e) {
        throw SpecError(path, std::string("word \"") + text + "\": " + e.what());
      } catch (std::invalid_argument const& e) {
        throw SpecError(path, std::string("word \"") + text + "\": " + e.what());
      }
    }

    std::vector<Word> get_words(json const& j, std::string const& path, Basis const& basis) {
      expect_array(j, path);
      std::vector<Word> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_word(j[i], index_path(path, i), basis));
      }
      return out;
    }

    std::vector<std::string> get_names(json const& j, std::string const& path) {
      expect_array(j, path);
      std::vector<std::string> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        auto p = index_path(path, i);
        auto s = get_string(j[i], p);
        if (!is_identifier(s)) {
          throw SpecError(p, "not a generator name: '" + s + "'");
        }
        out.push_back(std::move(s));
      }
      return out;
    }

    IntVec get_vector(json const& j, std::string const& path) {
      expect_array(j, path);
      IntVec out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_big(j[i], index_path(path, i)));
      }
      return out;
    }

    ojson put_vector(IntVec const& v) {
      ojson out = ojson::array();
      for (auto const& x : v) {
        out.push_back(put_big(x));
      }
      return out;
    }

    ojson put_words(std::vector<Word> const& ws, Basis const& basis) {
      ojson out = ojson::array();
      for (auto const& w : ws) {
        out.push_back(format_word(w, basis));
      }
      return out;
    }

    Basis with_fresh_letter(Basis b) {
      b.add(kFreshLetter);
      return b;
    }

    // ---- tower floors

    struct FloorContext {
      Tower const&                 below;
      std::set<std::string>&       ids;       // every id used or declared
      std::vector<std::string>     also;      // names taken in this floor
      std::size_t                  flats_so_far = 0;
    };

    std::string default_id(FloorContext const& c) {
      for (std::size_t k = c.flats_so_far + 1;; ++k) {
        std::string id = "F" + std::to_string(k);
        if (!c.ids.count(id)) {
          return id;
        }
      }
    }

    Flat parse_flat(json const& j, std::string const& path, FloorContext& c) {
      expect_object(j, path);
      auto        type  = get_string(need(j, "type", path), key_path(path, "type"));
      Basis const lower = c.below.names();
      std::string id;
      if (j.contains("id")) {
        id = get_string(j["id"], key_path(path, "id"));
        if (id.empty()) {
          throw SpecError(key_path(path, "id"), "empty flat id");
        }
      } else {
        id = default_id(c);
      }
      std::vector<std::string> names;
      if (j.contains("names")) {
        names = get_names(j["names"], key_path(path, "names"));
      }

      Flat f;
      if (type == "abelian") {
        allow_keys(j, path, {"type", "id", "names", "peg", "rank"});
        std::size_t rank = get_count(need(j, "rank", path), key_path(path, "rank"));
        if (names.empty()) {
          names = fresh_names(lower, "z", rank, c.also);
        }
        Word peg = get_word(need(j, "peg", path), key_path(path, "peg"), lower);
        f        = make_abelian_flat(c.below, {peg, rank, names, id});
      } else if (type == "surface") {
        allow_keys(j, path,
                   {"type", "id", "names", "genus", "boundary", "images", "twists", "cyclic_exception"});
        SurfaceFlatSpec s;
        s.genus = get_count(need(j, "genus", path), key_path(path, "genus"));
        if (j.contains("cyclic_exception")) {
          auto const& ce = j["cyclic_exception"];
          if (!ce.is_boolean()) {
            throw SpecError(key_path(path, "cyclic_exception"), "expected true or false");
          }
          s.cyclic_exception = ce.get<bool>();
        }
        s.boundary = get_words(need(j, "boundary", path), key_path(path, "boundary"), lower);
        s.images   = get_words(need(j, "images", path), key_path(path, "images"),
                               s.cyclic_exception ? with_fresh_letter(lower) : lower);
        if (names.empty()) {
          names   = fresh_names(lower, "x", 2 * s.genus, c.also);
          auto ts = fresh_names(lower, "t", s.boundary.empty() ? 0 : s.boundary.size() - 1, c.also);
          names.insert(names.end(), ts.begin(), ts.end());
        }
        s.names = names;
        s.id    = id;
        f       = make_surface_flat(c.below, s);
        if (j.contains("twists")) {
          auto tp = key_path(path, "twists");
          expect_array(j["twists"], tp);
          f.twists.clear();
          for (std::size_t i = 0; i < j["twists"].size(); ++i) {
            auto const& p  = j["twists"][i];
            auto        pp = index_path(tp, i);
            if (!p.is_array() || p.size() != 2) {
              throw SpecError(pp, "expected a pair [generator, by]");
            }
            f.twists.emplace_back(static_cast<int>(get_count(p[0], index_path(pp, 0))),
                                  static_cast<int>(get_count(p[1], index_path(pp, 1))));
          }
        }
      } else if (type == "free") {
        allow_keys(j, path, {"type", "id", "names", "rank"});
        std::size_t rank = get_count(need(j, "rank", path), key_path(path, "rank"));
        if (names.empty()) {
          names = fresh_names(lower, "f", rank, c.also);
        }
        f    = make_free_flat(c.below, rank, names);
        f.id = id;
      } else {
        throw SpecError(key_path(path, "type"), "unknown flat type '" + type + "'");
      }
      c.ids.insert(f.id);
      c.also.insert(c.also.end(), f.names.begin(), f.names.end());
      ++c.flats_so_far;
      return f;
    }

    void collect_declared_ids(json const& floors, std::set<std::string>& ids) {
      for (auto const& fl : floors) {
        auto visit = [&ids](json const& f) {
          if (f.is_object() && f.contains("id") && f["id"].is_string()) {
            ids.insert(f["id"].get<std::string>());
          }
        };
        if (fl.is_object() && fl.contains("flats") && fl["flats"].is_array()) {
          for (auto const& f : fl["flats"]) {
            visit(f);
          }
        } else {
          visit(fl);
        }
      }
    }

    Tower parse_tower(json const& j) {
      std::size_t rank = get_count(need(j, "base_rank", ""), "base_rank");
      Basis       base;
      if (j.contains("base")) {
        auto names = get_names(j["base"], "base");
        if (names.size() != rank) {
          throw SpecError("base", "expected " + std::to_string(rank) + " names");
        }
        try {
          base = Basis(names);
        } catch (std::invalid_argument const& e) {
          throw SpecError("base", e.what());
        }
      } else {
        base = Basis::numbered("e", rank);
      }
      if (rank == 0) {
        throw SpecError("base_rank", "base of rank 0");
      }
      Tower t = new_tower(base);
      if (!j.contains("floors")) {
        return t;
      }
      auto const& floors = j["floors"];
      expect_array(floors, "floors");
      std::set<std::string> ids;
      collect_declared_ids(floors, ids);
      std::set<std::string> used;
      std::size_t           count = 0;
      std::vector<Floor>    built;
      for (std::size_t i = 0; i < floors.size(); ++i) {
        auto         path = index_path("floors", i);
        auto const&  fl   = floors[i];
        FloorContext c{t, ids, {}, count};
        Floor        floor;
        expect_object(fl, path);
        if (fl.contains("flats")) {
          allow_keys(fl, path, {"flats"});
          auto fp = key_path(path, "flats");
          expect_array(fl["flats"], fp);
          if (fl["flats"].empty()) {
            throw SpecError(fp, "empty floor");
          }
          for (std::size_t k = 0; k < fl["flats"].size(); ++k) {
            floor.flats.push_back(parse_flat(fl["flats"][k], index_path(fp, k), c));
          }
        } else {
          floor.flats.push_back(parse_flat(fl, path, c));
        }
        for (auto const& f : floor.flats) {
          if (!used.insert(f.id).second) {
            throw SpecError(path, "duplicate flat id " + f.id);
          }
        }
        count = c.flats_so_far;
        built.push_back(std::move(floor));
        t = Tower(base, built);
      }
      return t;
    }

    ojson put_flat(Flat const& f, Basis const& names) {
      ojson o;
      switch (f.kind) {
        case Flat::Kind::Abelian:
          if (f.closure) {
            throw std::invalid_argument("flat " + f.id
                                        + " carries closure data; emit the tower before the closure");
          }
          o["type"]  = "abelian";
          o["id"]    = f.id;
          o["names"] = f.names;
          o["peg"]   = format_word(f.peg, names);
          o["rank"]  = f.rank;
          break;
        case Flat::Kind::Surface: {
          Basis ext = f.cyclic_exception ? with_fresh_letter(names) : names;
          o["type"]     = "surface";
          o["id"]       = f.id;
          o["names"]    = f.names;
          o["genus"]    = f.genus;
          o["boundary"] = put_words(f.boundary, names);
          o["images"]   = put_words(f.images, ext);
          ojson tw      = ojson::array();
          for (auto const& [g, by] : f.twists) {
            tw.push_back(ojson::array({g, by}));
          }
          o["twists"] = tw;
          if (f.cyclic_exception) {
            o["cyclic_exception"] = true;
          }
          break;
        }
        case Flat::Kind::Free:
          o["type"]  = "free";
          o["id"]    = f.id;
          o["names"] = f.names;
          o["rank"]  = f.rank;
          break;
      }
      return o;
    }

    ojson put_tower(Tower const& t) {
      ojson o;
      o["base_rank"] = t.base().rank();
      o["base"]      = t.base().names();
      ojson floors   = ojson::array();
      for (std::size_t i = 0; i < t.height(); ++i) {
        Basis below = t.basis_at(i);
        auto const& fl = t.floors()[i];
        if (fl.flats.size() == 1) {
          floors.push_back(put_flat(fl.flats[0], below));
        } else {
          ojson fs = ojson::array();
          for (auto const& f : fl.flats) {
            fs.push_back(put_flat(f, below));
          }
          ojson wrap;
          wrap["flats"] = fs;
          floors.push_back(wrap);
        }
      }
      o["floors"] = floors;
      return o;
    }

    // ---- closures

    std::map<std::string, ClosureSpec> parse_closure_list(json const& j, std::string const& path) {
      expect_array(j, path);
      std::map<std::string, ClosureSpec> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        auto        p = index_path(path, i);
        auto const& e = j[i];
        expect_object(e, p);
        allow_keys(e, p, {"flat", "peg_col", "matrix", "names", "retract_exp"});
        auto        id   = get_string(need(e, "flat", p), key_path(p, "flat"));
        ClosureSpec spec;
        spec.f.peg_col   = get_vector(need(e, "peg_col", p), key_path(p, "peg_col"));
        auto const& rows = need(e, "matrix", p);
        auto        mp   = key_path(p, "matrix");
        expect_array(rows, mp);
        std::size_t m = spec.f.peg_col.size();
        if (rows.size() != m) {
          throw SpecError(mp, "expected " + std::to_string(m) + " rows");
        }
        spec.f.K = IntMatrix(m, m);
        for (std::size_t r = 0; r < m; ++r) {
          auto row = get_vector(rows[r], index_path(mp, r));
          if (row.size() != m) {
            throw SpecError(index_path(mp, r), "expected " + std::to_string(m) + " entries");
          }
          for (std::size_t c = 0; c < m; ++c) {
            spec.f.K(r, c) = row[c];
          }
        }
        if (e.contains("names")) {
          spec.names = get_names(e["names"], key_path(p, "names"));
        }
        if (e.contains("retract_exp")) {
          spec.retract_exp = get_vector(e["retract_exp"], key_path(p, "retract_exp"));
        }
        if (!out.emplace(id, std::move(spec)).second) {
          throw SpecError(key_path(p, "flat"), "second embedding for " + id);
        }
      }
      return out;
    }

    ojson put_closure_list(std::map<std::string, ClosureSpec> const& c) {
      ojson out = ojson::array();
      for (auto const& [id, s] : c) {
        ojson e;
        e["flat"]    = id;
        e["peg_col"] = put_vector(s.f.peg_col);
        ojson rows   = ojson::array();
        for (std::size_t r = 0; r < s.f.K.rows(); ++r) {
          IntVec row;
          for (std::size_t k = 0; k < s.f.K.cols(); ++k) {
            row.push_back(s.f.K(r, k));
          }
          rows.push_back(put_vector(row));
        }
        e["matrix"] = rows;
        if (!s.names.empty()) {
          e["names"] = s.names;
        }
        if (!s.retract_exp.empty()) {
          e["retract_exp"] = put_vector(s.retract_exp);
        }
        out.push_back(e);
      }
      return out;
    }

    std::size_t flat_position(Tower const& t, std::string const& id, std::string const& path) {
      auto refs = t.flats();
      for (std::size_t i = 0; i < refs.size(); ++i) {
        if (t.flat(refs[i]).id == id) {
          return i;
        }
      }
      throw SpecError(path, "no flat with id " + id);
    }

    std::string dump(ojson const& o) {
      return o.dump(2) + "\n";
    }

  }  // namespace

  Tower TowerSpec::resolved() const {
    return closures.empty() ? tower : tower_closure(tower, closures);
  }

  TowerSpec parse_tower_spec(std::string_view json_text) {
    json j = parse_json(json_text);
    expect_object(j, "");
    allow_keys(j, "",
               {"base_rank", "base", "floors", "closures", "schedule", "ordering", "twin_names", "expect"});
    TowerSpec s;
    s.tower = parse_tower(j);

    if (j.contains("closures")) {
      s.closures = parse_closure_list(j["closures"], "closures");
      std::size_t i = 0;
      for (auto const& e : j["closures"]) {
        flat_position(s.tower, e["flat"].get<std::string>(), key_path(index_path("closures", i++), "flat"));
      }
    }
    if (j.contains("schedule")) {
      auto const& sj = j["schedule"];
      expect_object(sj, "schedule");
      GrowthSchedule g;
      for (auto const& [id, v] : sj.items()) {
        auto         p = key_path("schedule", id);
        flat_position(s.tower, id, p);
        FlatSchedule fs;
        json const*  exps = &v;
        if (v.is_object()) {
          allow_keys(v, p, {"order", "exps"});
          auto op = key_path(p, "order");
          expect_array(need(v, "order", p), op);
          for (std::size_t i = 0; i < v["order"].size(); ++i) {
            fs.order.push_back(get_count(v["order"][i], index_path(op, i)));
          }
          exps = &need(v, "exps", p);
          p    = key_path(p, "exps");
        }
        expect_array(*exps, p);
        for (std::size_t i = 0; i < exps->size(); ++i) {
          auto lp = index_path(p, i);
          try {
            fs.exps.push_back(parse_monomial(get_string((*exps)[i], lp)));
          } catch (std::invalid_argument const& e) {
            throw SpecError(lp, e.what());
          }
        }
        if (fs.order.empty()) {
          for (std::size_t i = 0; i < fs.exps.size(); ++i) {
            fs.order.push_back(i);
          }
        }
        if (fs.order.size() != fs.exps.size()) {
          throw SpecError(key_path("schedule", id), "order and exps differ in length");
        }
        g.flats[id] = std::move(fs);
      }
      s.schedule = std::move(g);
    }
    if (j.contains("ordering")) {
      auto const& oj = j["ordering"];
      expect_array(oj, "ordering");
      std::vector<std::size_t> perm;
      std::set<std::size_t>    seen;
      for (std::size_t i = 0; i < oj.size(); ++i) {
        auto p   = index_path("ordering", i);
        auto pos = flat_position(s.tower, get_string(oj[i], p), p);
        if (!seen.insert(pos).second) {
          throw SpecError(p, "flat listed twice");
        }
        perm.push_back(pos);
      }
      if (perm.size() != s.tower.flats().size()) {
        throw SpecError("ordering", "must list every flat");
      }
      s.ordering = std::move(perm);
    }
    if (j.contains("twin_names")) {
      auto const& tj = j["twin_names"];
      expect_object(tj, "twin_names");
      for (auto const& [from, to] : tj.items()) {
        auto p = key_path("twin_names", from);
        auto n = get_string(to, p);
        if (!is_identifier(n)) {
          throw SpecError(p, "not a generator name: '" + n + "'");
        }
        s.twin_names[from] = n;
      }
    }
    return s;
  }

  std::string emit_tower_spec(TowerSpec const& s) {
    ojson o = put_tower(s.tower);
    if (!s.closures.empty()) {
      o["closures"] = put_closure_list(s.closures);
    }
    auto refs = s.tower.flats();
    if (s.schedule) {
      ojson sj = ojson::object();
      for (auto const& [id, fs] : s.schedule->flats) {
        ojson exps = ojson::array();
        for (auto const& m : fs.exps) {
          exps.push_back(to_string(m));
        }
        bool identity = true;
        for (std::size_t i = 0; i < fs.order.size(); ++i) {
          identity = identity && fs.order[i] == i;
        }
        if (identity) {
          sj[id] = exps;
        } else {
          ojson e;
          e["order"] = fs.order;
          e["exps"]  = exps;
          sj[id]     = e;
        }
      }
      o["schedule"] = sj;
    }
    if (s.ordering) {
      ojson oj = ojson::array();
      for (auto p : *s.ordering) {
        oj.push_back(s.tower.flat(refs.at(p)).id);
      }
      o["ordering"] = oj;
    }
    if (!s.twin_names.empty()) {
      ojson tj = ojson::object();
      for (auto const& [k, v] : s.twin_names) {
        tj[k] = v;
      }
      o["twin_names"] = tj;
    }
    return dump(o);
  }

  std::string emit_tower_spec(Tower const& t) {
    return emit_tower_spec(TowerSpec{t, {}, {}, {}, {}});
  }

  std::map<std::string, ClosureSpec> parse_closures(std::string_view json_text) {
    return parse_closure_list(parse_json(json_text), "");
  }

  std::string emit_closures(std::map<std::string, ClosureSpec> const& c) {
    return dump(put_closure_list(c));
  }

  GadSpec parse_gad_spec(std::string_view json_text) {
    json j = parse_json(json_text);
    expect_object(j, "");
    allow_keys(j, "", {"vertices", "edges", "target", "eta", "filtration", "expect"});
    GadSpec                s;
    std::vector<GogVertex> vertices;
    std::map<int, std::size_t> index;
    auto const& vj = need(j, "vertices", "");
    expect_array(vj, "vertices");
    for (std::size_t i = 0; i < vj.size(); ++i) {
      auto        p = index_path("vertices", i);
      auto const& v = vj[i];
      expect_object(v, p);
      allow_keys(v, p, {"id", "type", "group", "genus", "boundary"});
      GogVertex gv;
      gv.id     = static_cast<int>(get_integer(need(v, "id", p), key_path(p, "id")));
      auto text = get_string(need(v, "group", p), key_path(p, "group"));
      try {
        gv.group = parse_presentation(text);
      } catch (std::exception const& e) {
        throw SpecError(key_path(p, "group"), e.what());
      }
      auto type = get_string(need(v, "type", p), key_path(p, "type"));
      if (type == "rigid") {
        s.gad.type[gv.id] = VertexType::Rigid;
      } else if (type == "abelian") {
        s.gad.type[gv.id] = VertexType::Abelian;
      } else if (type == "surface") {
        s.gad.type[gv.id] = VertexType::Surface;
        SurfaceData sd;
        sd.genus    = get_count(need(v, "genus", p), key_path(p, "genus"));
        sd.boundary = get_words(need(v, "boundary", p), key_path(p, "boundary"), gv.group.generators);
        s.gad.surface[gv.id] = std::move(sd);
      } else {
        throw SpecError(key_path(p, "type"), "unknown vertex type '" + type + "'");
      }
      if (type != "surface" && (v.contains("genus") || v.contains("boundary"))) {
        throw SpecError(p, "genus and boundary belong to surface vertices");
      }
      if (!index.emplace(gv.id, vertices.size()).second) {
        throw SpecError(key_path(p, "id"), "duplicate vertex id");
      }
      vertices.push_back(std::move(gv));
    }
    std::vector<GogEdge> edges;
    if (j.contains("edges")) {
      auto const& ej = j["edges"];
      expect_array(ej, "edges");
      for (std::size_t i = 0; i < ej.size(); ++i) {
        auto        p = index_path("edges", i);
        auto const& e = ej[i];
        expect_object(e, p);
        allow_keys(e, p, {"id", "from", "to", "from_image", "to_image"});
        GogEdge ge;
        ge.id        = static_cast<int>(get_integer(need(e, "id", p), key_path(p, "id")));
        ge.from      = static_cast<int>(get_integer(need(e, "from", p), key_path(p, "from")));
        ge.to        = static_cast<int>(get_integer(need(e, "to", p), key_path(p, "to")));
        auto vertex  = [&](int id, std::string const& q) -> GogVertex const& {
          auto it = index.find(id);
          if (it == index.end()) {
            throw SpecError(q, "no vertex with id " + std::to_string(id));
          }
          return vertices[it->second];
        };
        auto const& from = vertex(ge.from, key_path(p, "from"));
        auto const& to   = vertex(ge.to, key_path(p, "to"));
        ge.from_image    = get_words(need(e, "from_image", p), key_path(p, "from_image"), from.group.generators);
        ge.to_image      = get_words(need(e, "to_image", p), key_path(p, "to_image"), to.group.generators);
        if (ge.from_image.size() != ge.to_image.size() || ge.from_image.empty()) {
          throw SpecError(p, "edge images must be non-empty lists of equal length");
        }
        ge.rank = ge.from_image.size();
        edges.push_back(std::move(ge));
      }
    }
    try {
      s.gad.gog = GraphOfGroups(std::move(vertices), std::move(edges));
    } catch (std::invalid_argument const& e) {
      throw SpecError("edges", e.what());
    }
    if (j.contains("target")) {
      auto names = get_names(j["target"], "target");
      try {
        s.target = Basis(names);
      } catch (std::invalid_argument const& e) {
        throw SpecError("target", e.what());
      }
    }
    if (j.contains("eta")) {
      auto const& ej = j["eta"];
      expect_object(ej, "eta");
      for (auto const& [k, v] : ej.items()) {
        s.eta[k] = get_word(v, key_path("eta", k), s.target);
      }
    }
    if (j.contains("filtration")) {
      auto const& fj = j["filtration"];
      expect_object(fj, "filtration");
      allow_keys(fj, "filtration", {"root", "edges"});
      Filtration f;
      f.root = static_cast<int>(get_integer(need(fj, "root", "filtration"), "filtration.root"));
      auto const& es = need(fj, "edges", "filtration");
      expect_array(es, "filtration.edges");
      for (std::size_t i = 0; i < es.size(); ++i) {
        f.edges.push_back(static_cast<int>(get_integer(es[i], index_path("filtration.edges", i))));
      }
      s.filtration = std::move(f);
    }
    return s;
  }

  std::string emit_gad_spec(GadSpec const& s) {
    ojson o;
    ojson vs = ojson::array();
    for (auto const& v : s.gad.gog.vertices()) {
      ojson e;
      e["id"]  = v.id;
      auto t   = s.gad.type.count(v.id) ? s.gad.type.at(v.id) : VertexType::Rigid;
      e["type"]  = to_string(t);
      e["group"] = format_presentation(v.group);
      if (t == VertexType::Surface) {
        auto const& sd = s.gad.surface.at(v.id);
        e["genus"]     = sd.genus;
        e["boundary"]  = put_words(sd.boundary, v.group.generators);
      }
      vs.push_back(e);
    }
    o["vertices"] = vs;
    ojson es      = ojson::array();
    for (auto const& e : s.gad.gog.edges()) {
      ojson x;
      x["id"]         = e.id;
      x["from"]       = e.from;
      x["to"]         = e.to;
      x["from_image"] = put_words(e.from_image, s.gad.gog.vertex(e.from).group.generators);
      x["to_image"]   = put_words(e.to_image, s.gad.gog.vertex(e.to).group.generators);
      es.push_back(x);
    }
    o["edges"]  = es;
    o["target"] = s.target.names();
    ojson eta   = ojson::object();
    for (auto const& [k, w] : s.eta) {
      eta[k] = format_word(w, s.target);
    }
    o["eta"] = eta;
    if (s.filtration) {
      ojson f;
      f["root"]       = s.filtration->root;
      f["edges"]      = s.filtration->edges;
      o["filtration"] = f;
    }
    return dump(o);
  }

  std::string read_text_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw SpecError("", "cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

}  // namespace bsw
