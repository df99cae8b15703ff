#include "commands.hpp"

#include "bsw/construct.hpp"
#include "bsw/spec_io.hpp"
#include "bsw/testseq.hpp"

#include "json.hpp"

#include <cstdlib>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#ifndef BSW_FIXTURE_DIR
#define BSW_FIXTURE_DIR "fixtures"
#endif

namespace bsw::cli {

  namespace {

    using json = nlohmann::json;

    // Thrown to stop a command with a given exit code.
    struct Stop {
      int         code;
      std::string message;
    };

    std::string join(std::vector<std::string> const& xs, std::string const& sep = " ") {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? sep : "") + xs[i];
      }
      return out;
    }

    std::string words_text(std::vector<Word> const& ws, Basis const& b) {
      std::vector<std::string> xs;
      for (auto const& w : ws) {
        xs.push_back(format_word(w, b));
      }
      return join(xs, ", ");
    }

    std::string ints_text(IntVec const& v) {
      std::vector<std::string> xs;
      for (auto const& x : v) {
        xs.push_back(x.str());
      }
      return join(xs, ",");
    }

    std::string lattice_text(Lattice const& l) {
      if (l.dim() == 1 && l.rank() == 1) {
        auto b = l.basis()(0, 0);
        return (b == 1 ? std::string() : b.str()) + "ℤ";
      }
      return to_string(l);
    }

    TowerSpec load_spec(std::string const& path) {
      return parse_tower_spec(read_text_file(path));
    }

    std::map<std::string, ClosureSpec> embeddings_for(TowerSpec const& s, Options const& o) {
      if (!o.embeddings.empty()) {
        return parse_closures(read_text_file(o.embeddings));
      }
      if (s.closures.empty()) {
        throw Stop{kParse, "no closure embeddings: pass --embeddings or add a closures section"};
      }
      return s.closures;
    }

    // Fails on a violated check; Unknown needs --assume-valid and is then
    // recorded in the output.
    void gate(ValidityReport const& rep, Options const& o, std::ostream& out) {
      if (auto const* c = rep.first_failure()) {
        throw Stop{kValidity, "validity failure: check '" + c->name + "': " + c->detail};
      }
      for (auto const& c : rep.checks) {
        if (c.status != Tri::Unknown) {
          continue;
        }
        if (!o.assume_valid) {
          throw Stop{kUnknown, "unknown validity verdict: check '" + c.name + "': " + c.detail
                                   + "; rerun with --assume-valid to accept"};
        }
        out << "warning: assumed valid: " << c.name << ": " << c.detail << '\n';
      }
    }

    std::string describe(Flat const& f, Basis const& names) {
      std::ostringstream os;
      os << f.id << ' ';
      switch (f.kind) {
        case Flat::Kind::Abelian:
          os << "abelian rank " << f.rank << ", peg " << format_word(f.peg, names);
          if (f.closure) {
            os << ", closure " << to_string(system_to_coset(embedding_to_system(*f.closure)));
          }
          break;
        case Flat::Kind::Surface:
          os << "surface genus " << f.genus << ", boundary " << words_text(f.boundary, names);
          break;
        case Flat::Kind::Free:
          os << "free rank " << f.rank;
          break;
      }
      os << ", names " << join(f.names);
      return os.str();
    }

    bool is_gad_text(std::string const& text) {
      try {
        auto j = json::parse(text);
        return j.is_object() && j.contains("vertices");
      } catch (json::exception const&) {
        return false;
      }
    }

    std::vector<std::size_t> ordering_of(TowerSpec const& s, Tower const& t) {
      return s.ordering ? *s.ordering : identity_ordering(t);
    }

    GrowthSchedule schedule_of(TowerSpec const& s, Tower const& t, std::vector<std::size_t> const& ord) {
      auto g = default_schedule(t, ord);
      if (s.schedule) {
        for (auto const& [id, fs] : s.schedule->flats) {
          g.flats[id] = fs;
        }
      }
      return g;
    }

    bool has_surface(Tower const& t) {
      for (auto const& r : t.flats()) {
        if (t.flat(r).kind == Flat::Kind::Surface) {
          return true;
        }
      }
      return false;
    }

    // ---- commands

    void cmd_build(std::string const& in, Options const& o, std::ostream& out) {
      auto s = load_spec(in);
      if (o.emit) {
        out << emit_tower_spec(s);
        return;
      }
      Tower t = s.resolved();
      gate(validate_tower(t), o, out);
      out << "base: " << join(t.base().names()) << '\n';
      for (std::size_t i = 0; i < t.height(); ++i) {
        Basis below = t.basis_at(i);
        for (auto const& f : t.floors()[i].flats) {
          out << "floor " << i + 1 << ": " << describe(f, below) << '\n';
        }
      }
      out << "presentation: " << format_presentation(t.presentation()) << '\n';
    }

    void cmd_present(std::string const& in, Options const& o, std::ostream& out) {
      auto text = read_text_file(in);
      if (is_gad_text(text)) {
        auto g  = parse_gad_spec(text);
        auto fp = fundamental_presentation(g.gad.gog, maximal_subtree(g.gad.gog));
        out << format_presentation(eliminate_identifications(fp.presentation).result) << '\n';
        return;
      }
      Tower t = parse_tower_spec(text).resolved();
      gate(validate_tower(t), o, out);
      std::size_t level = o.level.value_or(t.height());
      if (level > t.height()) {
        throw Stop{kParse, "--level " + std::to_string(level) + " above the tower height "
                               + std::to_string(t.height())};
      }
      out << format_presentation(t.presentation_at(level)) << '\n';
    }

    void cmd_twin(std::string const& in, Options const& o, std::ostream& out) {
      auto s  = load_spec(in);
      auto tt = twin_tower(s.resolved(), s.twin_names);
      gate(tt.report, o, out);
      auto const& R = tt.result;
      out << format_presentation(R.presentation()) << '\n';
      out << "case: " << to_string(tt.kind) << '\n';
      for (auto const& r : s.tower.flats()) {
        auto const& id = s.tower.flat(r).id;
        if (auto it = tt.twin_map.find(id); it != tt.twin_map.end()) {
          out << "twin: " << id << " <-> " << it->second << '\n';
        } else {
          out << "doubled: " << id << '\n';
        }
      }
      for (std::size_t g = 0; g < tt.original_rank; ++g) {
        Word x = Word::gen(static_cast<int>(g));
        Word y = tt.swap(x);
        if (y != x && !(y.size() == 1 && std::abs(y[0]) - 1 < static_cast<int>(g))) {
          out << "swap: " << R.names().name(g) << " <-> " << format_word(y, R.names()) << '\n';
        }
      }
      auto ids = [&R](std::vector<std::size_t> const& perm) {
        auto                     refs = R.flats();
        std::vector<std::string> xs;
        for (auto p : perm) {
          xs.push_back(R.flat(refs[p]).id);
        }
        return join(xs);
      };
      out << "ordering: " << ids(tt.ordering) << '\n';
      out << "twin ordering: " << ids(tt.twin_ordering) << '\n';
    }

    void cmd_closure(std::string const& in, Options const& o, std::ostream& out) {
      auto  s   = load_spec(in);
      auto  emb = embeddings_for(s, o);
      Tower cl  = tower_closure(s.tower, emb);
      gate(validate_tower(cl), o, out);
      out << format_presentation(cl.presentation()) << '\n';
      auto inc = closure_inclusion(s.tower, cl);
      for (std::size_t g = 0; g < s.tower.names().rank(); ++g) {
        out << "inclusion: " << s.tower.names().name(g) << " -> "
            << format_word(inc.image(g), cl.names()) << '\n';
      }
      for (auto const& [id, spec] : emb) {
        out << "coset " << id << ": " << to_string(system_to_coset(embedding_to_system(spec.f)))
            << '\n';
      }
    }

    void cmd_symmetrize(std::string const& in, Options const& o, std::ostream& out) {
      auto s   = load_spec(in);
      auto tt  = twin_tower(s.resolved(), s.twin_names);
      auto emb = embeddings_for(s, o);
      auto sc  = symmetric_closure(tt, emb);
      gate(validate_tower(sc.tower), o, out);
      out << format_presentation(sc.tower.presentation()) << '\n';
      for (auto const& p : sc.pairs) {
        bool same = p.coset.lattice == p.coset_hat.lattice;
        out << "pair " << p.flat << " " << p.twin << ": U = " << lattice_text(p.coset.lattice)
            << ", Û = " << lattice_text(p.coset_hat.lattice) << (same ? ", equal" : ", DIFFERENT")
            << '\n';
        out << "coset " << p.flat << ": " << to_string(p.coset) << '\n';
        out << "coset " << p.twin << ": " << to_string(p.coset_hat) << '\n';
      }
    }

    void cmd_complete(std::string const& in, Options const& o, std::ostream& out) {
      auto g = parse_gad_spec(read_text_file(in));
      if (g.target.rank() == 0) {
        throw SpecError("target", "missing");
      }
      auto c = completion(g.gad, g.eta, g.target, g.filtration);
      gate(c.report, o, out);
      out << format_presentation(c.comp.presentation()) << '\n';
      for (auto const& st : c.steps) {
        out << "step edge " << st.edge << ": " << st.kind
            << (st.detail.empty() ? "" : ", " + st.detail) << '\n';
      }
      out << format_morphism(c.embedding, c.fp.presentation.generators, c.comp.names());
      out << "relators: " << to_string(c.check) << '\n';
      if (c.check.status == MorphismCheck::Status::Fail) {
        throw Stop{kValidity, "validity failure: embedding does not kill every relator"};
      }
    }

    void cmd_testseq(std::string const& in, Options const& o, std::ostream& out, std::ostream& err) {
      auto  s   = load_spec(in);
      Tower t   = s.resolved();
      gate(validate_tower(t), o, out);
      auto  ord = ordering_of(s, t);
      auto  sch = schedule_of(s, t, ord);
      bool  surf = has_surface(t);
      auto  ns  = o.n.empty() ? std::vector<long long>{1} : o.n;
      bool  bad = false;
      for (auto n : ns) {
        if (n < 0) {
          throw Stop{kParse, "--n must be non-negative"};
        }
        auto pt = surf ? gen_surface_point(t, ord, sch, n, o.seed.value_or(1))
                       : gen_sequence_point(t, ord, sch, n, o.seed.value_or(0));
        if (ns.size() > 1) {
          out << "# n = " << n << '\n';
        }
        out << format_point(pt, t);
        if (pt.heuristic) {
          err << "note: n = " << n << " is a heuristic point (surface flats)\n";
        }
        if (n == 0) {
          continue;  // the retraction, not a sequence index
        }
        auto rep = verify_point(t, ord, sch, pt);
        for (auto const& c : rep.checks) {
          if (c.status == Tri::No) {
            err << "check failed at n = " << n << ": " << c.name << ": " << c.detail << '\n';
            bad = true;
          }
        }
      }
      if (bad) {
        throw Stop{kValidity, "validity failure: generated point fails verify_point"};
      }
    }

    void cmd_extend(std::string const& in, Options const& o, std::ostream& out) {
      auto s   = load_spec(in);
      auto emb = embeddings_for(s, o);
      std::string id = o.flat;
      if (id.empty()) {
        if (emb.size() != 1) {
          throw Stop{kParse, "several closure embeddings: choose one with --flat"};
        }
        id = emb.begin()->first;
      }
      auto it = emb.find(id);
      if (it == emb.end()) {
        throw Stop{kParse, "no closure embedding for flat " + id};
      }
      IntVec            p;
      std::stringstream ss(o.p);
      std::string       item;
      while (std::getline(ss, item, ',')) {
        auto a = item.find_first_not_of(' ');
        auto b = item.find_last_not_of(' ');
        auto x = a == std::string::npos ? std::string() : item.substr(a, b - a + 1);
        std::size_t start = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (x.size() == start || x.find_first_not_of("0123456789", start) != std::string::npos) {
          throw Stop{kParse, "--p: not an integer list: '" + o.p + "'"};
        }
        p.push_back(Int(x[0] == '+' ? x.substr(1) : x));
      }
      if (p.size() != it->second.f.rank()) {
        throw Stop{kParse, "--p: expected " + std::to_string(it->second.f.rank()) + " exponents"};
      }
      auto e = extension_test(it->second.f, p);
      if (e.extends) {
        out << "extends, y=" << ints_text(*e.y) << '\n';
      } else {
        out << "does not extend, coset " << to_string(e.coset) << '\n';
      }
    }

    void cmd_oracle(std::string const& in, Options const& o, std::ostream& out) {
      auto  s = load_spec(in);
      Tower t = s.resolved();
      gate(validate_tower(t), o, out);
      Word w;
      try {
        w = parse_word(o.word, t.names());
      } catch (ParseError const& e) {
        throw Stop{kParse, std::string("--word: ") + e.what()};
      }
      auto v = word_verdict(t.structure(), w, t.witnesses());
      if (v.kind == Verdict::Kind::Unknown) {
        v = limit_oracle(t, w, o.budget, o.seed.value_or(0));
      }
      out << to_string(v) << '\n';
    }

    std::vector<std::string> lines_of(json const& j) {
      std::vector<std::string> out;
      if (j.is_string()) {
        out.push_back(j.get<std::string>());
      } else {
        for (auto const& x : j) {
          out.push_back(x.get<std::string>());
        }
      }
      return out;
    }

    void cmd_verify_fixtures(Options const& o, std::ostream& out) {
      auto dir      = o.fixtures.empty() ? default_fixture_dir() : o.fixtures;
      auto manifest = json::parse(read_text_file(dir / "manifest.json"));
      std::size_t pass = 0, total = 0;
      for (auto const& f : manifest) {
        ++total;
        auto    name = f.at("name").get<std::string>();
        Options sub;
        sub.fixtures = dir;
        auto args    = f.value("args", json::object());
        if (args.contains("level")) {
          sub.level = args["level"].get<std::size_t>();
        }
        if (args.contains("n")) {
          sub.n = args["n"].get<std::vector<long long>>();
        }
        if (args.contains("seed")) {
          sub.seed = args["seed"].get<std::uint64_t>();
        }
        sub.budget = args.value("budget", sub.budget);
        sub.p      = args.value("p", std::string());
        sub.word   = args.value("word", std::string());
        sub.flat   = args.value("flat", std::string());
        if (args.contains("embeddings")) {
          sub.embeddings = (dir / args["embeddings"].get<std::string>()).string();
        }
        auto        input    = (dir / f.at("input").get<std::string>()).string();
        auto        got      = run(f.at("command").get<std::string>(), input, sub);
        std::string expected = join(lines_of(f.at("expect")), "\n") + "\n";
        int         code     = f.value("exit", 0);
        if (got.code == code && got.out == expected) {
          ++pass;
          out << "pass " << name << '\n';
          continue;
        }
        out << "FAIL " << name << " (exit " << got.code << ")\n";
        out << "  expected:\n" << expected << "  got:\n" << got.out << got.err;
      }
      out << pass << "/" << total << " fixtures passed\n";
      if (pass != total) {
        throw Stop{kMismatch, "fixture mismatch"};
      }
    }

  }  // namespace

  std::vector<std::string> command_names() {
    return {"build",  "present", "twin",   "closure", "symmetrize",
            "complete", "testseq", "extend", "oracle",  "verify-fixtures"};
  }

  std::filesystem::path default_fixture_dir() {
    if (char const* env = std::getenv("BSW_FIXTURES"); env && *env) {
      return env;
    }
    return BSW_FIXTURE_DIR;
  }

  Outcome run(std::string const& command, std::string const& input, Options const& opts) {
    std::ostringstream out, err;
    Outcome            res;
    try {
      if (command == "build") {
        cmd_build(input, opts, out);
      } else if (command == "present") {
        cmd_present(input, opts, out);
      } else if (command == "twin") {
        cmd_twin(input, opts, out);
      } else if (command == "closure") {
        cmd_closure(input, opts, out);
      } else if (command == "symmetrize") {
        cmd_symmetrize(input, opts, out);
      } else if (command == "complete") {
        cmd_complete(input, opts, out);
      } else if (command == "testseq") {
        cmd_testseq(input, opts, out, err);
      } else if (command == "extend") {
        cmd_extend(input, opts, out);
      } else if (command == "oracle") {
        cmd_oracle(input, opts, out);
      } else if (command == "verify-fixtures") {
        cmd_verify_fixtures(opts, out);
      } else {
        throw Stop{kParse, "unknown command " + command};
      }
    } catch (Stop const& s) {
      res.code = s.code;
      err << s.message << '\n';
    } catch (SpecError const& e) {
      res.code = kParse;
      err << "parse error: " << e.what() << '\n';
    } catch (ParseError const& e) {
      res.code = kParse;
      err << e.what() << '\n';
    } catch (json::exception const& e) {
      res.code = kParse;
      err << "parse error: " << e.what() << '\n';
    } catch (TowerError const& e) {
      res.code = kValidity;
      std::string what = e.what();
      if (what.rfind(e.check() + ": ", 0) == 0) {
        what = what.substr(e.check().size() + 2);
      }
      err << "validity failure: check '" << e.check() << "': " << what << '\n';
    } catch (std::invalid_argument const& e) {
      res.code = kValidity;
      err << "validity failure: " << e.what() << '\n';
    }
    res.out = out.str();
    res.err = err.str();
    return res;
  }

}  // namespace bsw::cli
