#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbitile/orbit_graph.hpp"
#include "orbitile/overlay_alphabet.hpp"
#include "orbitile/pq_surface.hpp"

namespace orbitile {

// The decorated {p,q} system overlaid on a second system B.
struct A0System {
  int p = 0, q = 0;
  SubstitutionSystem pq;
  DecoratedSystem dec;
  OverlaySystem ov;
  std::vector<std::string> names;  // overlay letter names by index

  int alpha(int letter) const { return ov.letters.at(static_cast<std::size_t>(letter)).alpha; }
  bool is_w(int letter) const { return dec.base_of.at(static_cast<std::size_t>(alpha(letter))) == 1; }
  std::string decorated_name(int letter) const { return dec.reachable.letter_name(alpha(letter)); }
};

A0System build_a0(int p, int q, const SubstitutionSystem& sysB, const mpq_class& slack = mpq_class(3, 2));

struct FamilySpec {
  std::vector<std::pair<mpq_class, mpq_class>> offsets;
  long rows = 9;
  long half_width = 16;
  long base_rows = 8;   // plain decorated windows, for the projection set
  long base_half = 40;
  int radius = 1;       // basepoints need this depth
};

// Seeded random offsets, numerators in [-40, 40] and denominators in [7, 53], never both zero.
std::vector<std::pair<mpq_class, mpq_class>> default_offsets(int count, unsigned seed = 12345);

struct PatternFamily {
  int p = 0, q = 0;
  SubstitutionSystem b;
  mpq_class slack = mpq_class(3, 2);
  std::set<std::string> patterns;     // canonical A0 codes of Delta_v
  std::set<std::string> projections;  // canonical decorated codes of Delta_v
  std::map<std::string, std::string> metadata;
};

// Reduced patch of an overlay window over A0 (letters are overlay indices).
GraphPatch a0_patch(const A0System& a0, const OrbitWindow& w);

PatternFamily collect_pattern_family(const A0System& a0, const FamilySpec& spec);

// Local conditions at v: unique horizontal paths on the faces at v, the produced path is in L,
// and (omega(v), omega on that path) is in R. children is left to right when ok.
struct LocalCheck {
  bool ok = false;
  std::string reason;
  std::vector<int> children;
};

LocalCheck local_conditions(const A0System& a0, const GraphPatch& g, const RowAnalysis& ra, int v);

// Decorated view of an A0 patch, for RowAnalysis.
DecoratedGraph a0_decorated(const A0System& a0, const GraphPatch& g);

enum class Verdict { Pass, Fail, Unknown };
std::string to_string(Verdict v);

struct VertexVerdict {
  int vertex = 0;
  Verdict verdict = Verdict::Unknown;
  std::string reason;
};

struct MembershipReport {
  std::vector<VertexVerdict> vertices;
  long pass = 0, fail = 0, unknown = 0;
};

// Vertices with depth >= radius (and, when only is nonempty, listed there) are judged.
MembershipReport check_membership(const A0System& a0, const GraphPatch& g, const PatternFamily& fam,
                                  int radius = 1, const std::vector<int>& only = {});

}  // namespace orbitile
