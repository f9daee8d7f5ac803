#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "exotica/group/presentation.hpp"
#include "exotica/group/van_kampen.hpp"

namespace exotica::constructions {

struct KnotRecord {
  std::string name;
  group::Presentation group;
  group::Word meridian;
  group::Word longitude;  // null-homologous, commutes with the meridian
  int fibered_genus = 0;
};

// Identification of surface generators across a fiber sum, written as
// `source -> target` on words of the two boundary sides.
struct GluingMap {
  std::vector<std::pair<group::Word, group::Word>> assignments;
  group::Word meridian_image;  // identity: meridians are killed

  bool kills_meridians() const { return meridian_image.is_identity(); }
};

// Body of a `glue { ... }` block:
//   src -> dst {, src -> dst} [; meridian -> word]
GluingMap parse_gluing(std::string_view body, int line = 1, int column = 1);

// Vanishing cycles, as words in the genus-g surface generators.
struct CurveList {
  int genus = 0;
  std::vector<group::Word> curves;
};

using BundledValue = std::variant<group::Presentation, group::BoundaryData, GluingMap, KnotRecord, CurveList>;

struct BundledItem {
  std::string name;
  BundledValue value;
  std::string citation;
  std::string note;  // e.g. what a transcription leaves out
};

// Directory holding bundled.exo: $EXOTICA_DATA_DIR if set, else the build-time
// default.
std::filesystem::path data_dir();

// Items are read once from the bundled data file. Throws Error for unknown names.
const BundledItem& bundled(std::string_view name);
std::vector<std::string> bundled_names();

// Parses a bundled-data file (a restricted script: `let` bindings of
// presentation/glue literals and boundary(), knot(), curves() calls).
std::vector<BundledItem> load_bundled(std::string_view text, const std::string& source_name);

// "trefoil" or "figure8".
KnotRecord knot(std::string_view name);

// Adds the longitude as a relator.
group::Presentation zero_surgery(const KnotRecord& k);

// Adds a central generator (named `fresh`, or "x", "x2", ... when empty)
// commuting with every existing generator.
group::Presentation cross_circle(const group::Presentation& p, std::string fresh = "");

// Resolves the map's words against the surface images of the two sides.
group::Matching matching_for(const group::BoundaryData& a, const group::BoundaryData& b, const GluingMap& g);

// van Kampen for the fiber sum glued by `g`; meridians are killed when the
// map sends the meridian to the identity, unless `kill_meridians` overrides.
group::Presentation glue(const group::BoundaryData& a, const group::BoundaryData& b, const GluingMap& g,
                         std::optional<bool> kill_meridians = std::nullopt);

}  // namespace exotica::constructions
