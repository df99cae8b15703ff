#ifndef BSW_SPEC_IO_HPP_
#define BSW_SPEC_IO_HPP_

#include "bsw/construct.hpp"
#include "bsw/testseq.hpp"
#include "bsw/tower.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bsw {

  // Malformed input.  where() is a JSON path such as floors[1].peg, or empty
  // for syntax errors of the file itself.
  class SpecError : public std::runtime_error {
   public:
    SpecError(std::string where, std::string const& msg)
        : std::runtime_error(where.empty() ? msg : where + ": " + msg), _where(std::move(where)) {}
    std::string const& where() const noexcept {
      return _where;
    }

   private:
    std::string _where;
  };

  struct TowerSpec {
    Tower                                   tower;  // closures not applied
    std::map<std::string, ClosureSpec>      closures;
    std::optional<GrowthSchedule>           schedule;
    std::optional<std::vector<std::size_t>> ordering;  // positions in tower.flats()
    NameMap                                 twin_names;

    // The tower with its closures glued in.
    Tower resolved() const;
  };

  // Keys: base_rank, base (names), floors, closures, schedule, ordering,
  // twin_names.  A floor is one flat object or {"flats": [...]}.  Flat ids
  // and generator names default as in the glue functions.  Only the shape
  // checks of the Tower constructor run here; TowerError passes through.
  TowerSpec   parse_tower_spec(std::string_view json_text);
  // Canonical form: every default spelled out, two-space indentation,
  // trailing newline.  Parsing the output and emitting again is the identity.
  std::string emit_tower_spec(TowerSpec const& s);
  std::string emit_tower_spec(Tower const& t);

  // List of {flat, peg_col, matrix} with optional names and retract_exp.
  // Matrix rows belong to z_1..z_m.
  std::map<std::string, ClosureSpec> parse_closures(std::string_view json_text);
  std::string                        emit_closures(std::map<std::string, ClosureSpec> const& c);

  // A GAD with the data completion needs:
  //   vertices: [{id, type, group, genus?, boundary?}]
  //   edges:    [{id, from, to, from_image: [...], to_image: [...]}]
  //   target:   names of L;  eta: {generator: word over L};  filtration?
  struct GadSpec {
    Gad                         gad;
    Basis                       target;
    std::map<std::string, Word> eta;
    std::optional<Filtration>   filtration;
  };
  GadSpec     parse_gad_spec(std::string_view json_text);
  std::string emit_gad_spec(GadSpec const& s);

  // Throws SpecError when the file cannot be read.
  std::string read_text_file(std::filesystem::path const& path);

}  // namespace bsw

#endif  // BSW_SPEC_IO_HPP_
