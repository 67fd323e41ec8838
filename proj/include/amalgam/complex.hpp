#pragma once

// Block complexes: closed surfaces and surface amalgams assembled from
// octagonal building blocks. Cells carry (copy, block, half); boundary sides
// are either matched one-to-one by pairings or belong to arcs of a gluing
// class (the branch locus). Loading validates pairings, vertex links, member
// curve closure and the metric parameter range.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amalgam/block_geometry.hpp"
#include "amalgam/convention.hpp"

namespace amalgam {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CellId {
  int copy = 1;   // 1-based
  int block = 1;  // 1..8
  Half half = Half::Whole;
  auto operator<=>(const CellId&) const = default;
};

inline std::string cell_str(const CellId& c) {
  std::ostringstream os;
  os << "(" << c.copy << "," << c.block << "," << half_name(c.half) << ")";
  return os.str();
}

struct SideEnd {
  int cell = -1;  // index into BlockComplex::cells
  Side side = Side::CL;
  auto operator<=>(const SideEnd&) const = default;
};

struct Pairing {
  SideEnd a, b;
  bool reversing = true;  // arc-length coordinate matched as t <-> L - t
};

// An arc of the branch locus: the side-ends sharing the geometric arc. With
// two sheets the arc is an identified edge of the underlying surface;
// `reversing` relates sheet 1's canonical coordinate to sheet 0's. The arc's
// own coordinate is sheet 0's canonical coordinate.
struct BranchArc {
  std::vector<SideEnd> sheets;  // size 1 or 2
  bool reversing = true;
};

struct OrientedArc {
  int arc = -1;         // index into GluingClass::arcs
  bool forward = true;  // traversal direction relative to the arc coordinate
};

struct GluingClass {
  std::vector<BranchArc> arcs;
  std::vector<std::vector<OrientedArc>> members;  // >= 2 closed curves
};

// How a given side-end continues into a neighboring cell.
struct Transition {
  SideEnd target;        // entered side
  bool flip = true;      // exit coordinate t maps to entry coordinate L - t
  int class_index = -1;  // -1 for plain pairings
  int branch_choice = 0; // stable index among the alternatives at this exit
};

struct BlockComplex {
  std::string name;
  double b = 0, c = 0;
  int copies = 1;
  bool subdivided = false;
  std::vector<CellId> cells;
  std::vector<Pairing> pairings;
  std::vector<GluingClass> classes;
  BlockGeometry geom;

  // derived tables
  std::map<CellId, int> cell_index;
  std::map<SideEnd, std::vector<Transition>> transitions;
  std::map<SideEnd, std::pair<int, int>> arc_of_sheet;  // -> (class, arc)
  std::map<SideEnd, int> pairing_of_side;

  int cell(const CellId& id) const {
    auto it = cell_index.find(id);
    if (it == cell_index.end())
      throw ValidationError("unknown cell " + cell_str(id));
    return it->second;
  }

  Half half_of(int ci) const { return cells[ci].half; }

  bool is_branch_side(const SideEnd& se) const {
    return arc_of_sheet.count(se) > 0;
  }

  const std::vector<Transition>& continuations(const SideEnd& se) const {
    auto it = transitions.find(se);
    if (it == transitions.end())
      throw ValidationError("side has no continuation: " +
                            cell_str(cells[se.cell]) + ":" +
                            side_name(se.side));
    return it->second;
  }

  double side_len(const SideEnd& se) const { return geom.side_length(se.side); }

  int num_blocks() const {
    std::set<std::pair<int, int>> blocks;
    for (auto& c : cells) blocks.insert({c.copy, c.block});
    return static_cast<int>(blocks.size());
  }

  double volume() const { return 2 * M_PI * num_blocks(); }
};

inline std::string se_str(const BlockComplex& bc, const SideEnd& se) {
  return cell_str(bc.cells[se.cell]) + ":" + side_name(se.side);
}

// ---------------------------------------------------------------------------
// Corner bookkeeping. Corner k of a cell sits between cycle sides k and k+1
// (mod n); side k runs from corner k-1 to corner k in canonical direction.

struct Corner {
  int cell = -1;
  int k = 0;
  auto operator<=>(const Corner&) const = default;
};

// Crossing the side on one flank of a corner. ccw crosses side k+1 (the
// corner is its t=0 start), cw crosses side k (the corner is its t=L end).
// `edge_open(pairing, cls, arc)` gates which identifications are traversed;
// closed identifications and free sides return nullopt.
template <typename OpenFn>
inline std::optional<Corner> corner_step(const BlockComplex& bc,
                                         const Corner& c, bool ccw,
                                         OpenFn&& edge_open) {
  const CellId& cid = bc.cells[c.cell];
  int n = cycle_length(cid.half);
  int side_pos = ccw ? (c.k + 1) % n : c.k;
  Side s = cycle_side(cid.half, side_pos);
  SideEnd se{c.cell, s};

  SideEnd other;
  bool reversing = true;
  if (auto it = bc.pairing_of_side.find(se); it != bc.pairing_of_side.end()) {
    if (!edge_open(it->second, -1, -1)) return std::nullopt;
    const Pairing& p = bc.pairings[it->second];
    other = (p.a == se) ? p.b : p.a;
    reversing = p.reversing;
  } else if (auto it2 = bc.arc_of_sheet.find(se);
             it2 != bc.arc_of_sheet.end()) {
    auto [cls, arc] = it2->second;
    if (!edge_open(-1, cls, arc)) return std::nullopt;
    const BranchArc& a = bc.classes[cls].arcs[arc];
    if (a.sheets.size() < 2) return std::nullopt;
    other = (a.sheets[0] == se) ? a.sheets[1] : a.sheets[0];
    reversing = a.reversing;
  } else {
    return std::nullopt;
  }

  const CellId& ocid = bc.cells[other.cell];
  int oidx = side_index_in_cycle(ocid.half, other.side);
  int on = cycle_length(ocid.half);
  bool at_zero_end = ccw;
  bool lands_at_L = (at_zero_end == reversing);
  int ok = lands_at_L ? oidx : (oidx - 1 + on) % on;
  return Corner{other.cell, ok};
}

inline auto all_edges_open() {
  return [](int, int, int) { return true; };
}

// Vertex classes of the underlying surface structure (pairings plus the
// sheet identification within each branch arc, no cross-member gluing).
// Returns vertex id per corner, corners indexed as cell * 8 + k.
struct VertexTable {
  std::vector<int> vertex_of_corner;  // -1 where unused
  int count = 0;
};

template <typename OpenFn>
inline VertexTable vertex_classes(const BlockComplex& bc, OpenFn&& open) {
  int n = static_cast<int>(bc.cells.size()) * 8;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  auto cid = [&](const Corner& c) { return c.cell * 8 + c.k; };
  for (int ci = 0; ci < static_cast<int>(bc.cells.size()); ++ci) {
    int cl = cycle_length(bc.cells[ci].half);
    for (int k = 0; k < cl; ++k) {
      Corner c{ci, k};
      for (bool ccw : {false, true}) {
        auto nxt = corner_step(bc, c, ccw, open);
        if (nxt) unite(cid(c), cid(*nxt));
      }
    }
  }
  VertexTable vt;
  vt.vertex_of_corner.assign(n, -1);
  std::map<int, int> remap;
  for (int ci = 0; ci < static_cast<int>(bc.cells.size()); ++ci) {
    int cl = cycle_length(bc.cells[ci].half);
    for (int k = 0; k < cl; ++k) {
      int id = ci * 8 + k;
      int root = find(id);
      auto [it, fresh] = remap.try_emplace(root, vt.count);
      if (fresh) ++vt.count;
      vt.vertex_of_corner[id] = it->second;
    }
  }
  return vt;
}

// ---------------------------------------------------------------------------
// Derived-table construction and validation

inline void build_tables(BlockComplex& bc) {
  bc.cell_index.clear();
  for (int i = 0; i < static_cast<int>(bc.cells.size()); ++i) {
    if (!bc.cell_index.emplace(bc.cells[i], i).second)
      throw ValidationError("duplicate cell " + cell_str(bc.cells[i]));
  }
  bc.pairing_of_side.clear();
  bc.arc_of_sheet.clear();
  bc.transitions.clear();

  auto claim_pairing = [&](const SideEnd& se, int pi) {
    if (bc.pairing_of_side.count(se) || bc.arc_of_sheet.count(se))
      throw ValidationError("side used twice: " + se_str(bc, se));
    bc.pairing_of_side[se] = pi;
  };
  for (int pi = 0; pi < static_cast<int>(bc.pairings.size()); ++pi) {
    claim_pairing(bc.pairings[pi].a, pi);
    claim_pairing(bc.pairings[pi].b, pi);
  }
  for (int gi = 0; gi < static_cast<int>(bc.classes.size()); ++gi) {
    const GluingClass& g = bc.classes[gi];
    for (int ai = 0; ai < static_cast<int>(g.arcs.size()); ++ai) {
      for (const SideEnd& se : g.arcs[ai].sheets) {
        if (bc.pairing_of_side.count(se) || bc.arc_of_sheet.count(se))
          throw ValidationError("side used twice: " + se_str(bc, se));
        bc.arc_of_sheet[se] = {gi, ai};
      }
    }
  }

  // pairing transitions
  for (const Pairing& p : bc.pairings) {
    bc.transitions[p.a].push_back(Transition{p.b, p.reversing, -1, 0});
    bc.transitions[p.b].push_back(Transition{p.a, p.reversing, -1, 0});
  }

  // branch transitions: the member curves are identified by common curve
  // parameter, arc position against arc position, so a crossing may continue
  // into any sheet over the same position except the one it left through.
  for (int gi = 0; gi < static_cast<int>(bc.classes.size()); ++gi) {
    const GluingClass& g = bc.classes[gi];
    int positions = static_cast<int>(g.members.front().size());
    for (int pos = 0; pos < positions; ++pos) {
      // collect (sheet, orientation of sheet coordinate vs curve parameter)
      struct SheetRef {
        SideEnd se;
        bool coord_along_curve;  // sheet canonical coord increases with u
      };
      std::vector<SheetRef> sheets;
      for (const auto& member : g.members) {
        const OrientedArc& oa = member[pos];
        const BranchArc& arc = g.arcs[oa.arc];
        for (int si = 0; si < static_cast<int>(arc.sheets.size()); ++si) {
          bool sheet_along_arc = (si == 0) ? true : !arc.reversing;
          bool along = (sheet_along_arc == oa.forward);
          sheets.push_back({arc.sheets[si], along});
        }
      }
      for (const auto& from : sheets) {
        int choice = 0;
        for (const auto& to : sheets) {
          if (to.se == from.se) continue;
          // transfer exit coordinate through the curve parameter: sheets
          // whose coordinates run the same way along the curve meet as
          // t -> t, opposite ones as t -> L - t
          bool flip = (from.coord_along_curve != to.coord_along_curve);
          bc.transitions[from.se].push_back(
              Transition{to.se, flip, gi, choice++});
        }
      }
    }
  }
}

inline void validate_complex(BlockComplex& bc) {
  if (!(bc.c > 0 && bc.c < bc.b && bc.b < 1))
    throw ValidationError("metric parameters out of range: need 0 < c < b < 1");
  bc.geom = solve_block(bc.b, bc.c);
  if (bc.cells.empty()) throw ValidationError("complex has no cells");

  // half/whole consistency per copy; halves come in L/R pairs
  std::map<int, std::set<Half>> halves_by_copy;
  std::set<std::pair<int, int>> lefts, rights;
  for (const CellId& c : bc.cells) {
    if (c.block < 1 || c.block > 8)
      throw ValidationError("block index out of range in " + cell_str(c));
    halves_by_copy[c.copy].insert(c.half);
    if (c.half == Half::Left) lefts.insert({c.copy, c.block});
    if (c.half == Half::Right) rights.insert({c.copy, c.block});
  }
  for (auto& [copy, hs] : halves_by_copy) {
    bool whole = hs.count(Half::Whole) > 0;
    bool split = hs.count(Half::Left) > 0 || hs.count(Half::Right) > 0;
    if (whole && split)
      throw ValidationError("copy " + std::to_string(copy) +
                            " mixes whole and subdivided cells");
  }
  if (lefts != rights)
    throw ValidationError("subdivided halves do not come in left/right pairs");
  bc.subdivided = !lefts.empty();

  build_tables(bc);

  // every boundary side accounted for exactly once; classes checked in
  // build_tables for double use, here for omissions and class mismatches
  for (int ci = 0; ci < static_cast<int>(bc.cells.size()); ++ci) {
    Half h = bc.cells[ci].half;
    for (int k = 0; k < cycle_length(h); ++k) {
      SideEnd se{ci, cycle_side(h, k)};
      if (!bc.pairing_of_side.count(se) && !bc.arc_of_sheet.count(se))
        throw ValidationError("unpaired side: " + se_str(bc, se));
    }
  }
  for (const Pairing& p : bc.pairings) {
    if (length_class(p.a.side) != length_class(p.b.side))
      throw ValidationError("length class mismatch in pairing " +
                            se_str(bc, p.a) + " ~ " + se_str(bc, p.b));
    if (!cell_has_side(bc.cells[p.a.cell].half, p.a.side) ||
        !cell_has_side(bc.cells[p.b.cell].half, p.b.side))
      throw ValidationError("pairing references a side missing on its cell");
    if (p.a == p.b)
      throw ValidationError("side paired with itself: " + se_str(bc, p.a));
  }
  for (const GluingClass& g : bc.classes) {
    if (g.members.size() < 2)
      throw ValidationError("gluing class needs at least two member curves");
    std::vector<LengthClass> pattern;
    for (const OrientedArc& oa : g.members.front())
      pattern.push_back(length_class(g.arcs[oa.arc].sheets[0].side));
    for (const auto& member : g.members) {
      if (member.size() != pattern.size())
        throw ValidationError("gluing class members differ in length pattern");
      for (size_t i = 0; i < member.size(); ++i)
        if (length_class(g.arcs[member[i].arc].sheets[0].side) != pattern[i])
          throw ValidationError("gluing class members differ in length pattern");
    }
    std::set<int> used;
    for (const auto& member : g.members)
      for (const OrientedArc& oa : member)
        if (!used.insert(oa.arc).second)
          throw ValidationError("arc appears in two member positions");
    if (used.size() != g.arcs.size())
      throw ValidationError("gluing class has arcs outside its members");
    for (const BranchArc& a : g.arcs) {
      if (a.sheets.size() != 2)
        throw ValidationError("branch arc must carry two sheets");
      for (const SideEnd& se : a.sheets)
        if (length_class(se.side) != length_class(a.sheets[0].side))
          throw ValidationError("branch arc sheets differ in length class");
    }
  }

  // vertex links of the underlying surface: every vertex has 4 corners
  VertexTable vt = vertex_classes(bc, all_edges_open());
  std::map<int, int> sz;
  for (int ci = 0; ci < static_cast<int>(bc.cells.size()); ++ci)
    for (int k = 0; k < cycle_length(bc.cells[ci].half); ++k)
      sz[vt.vertex_of_corner[ci * 8 + k]]++;
  for (int ci = 0; ci < static_cast<int>(bc.cells.size()); ++ci)
    for (int k = 0; k < cycle_length(bc.cells[ci].half); ++k) {
      int v = vt.vertex_of_corner[ci * 8 + k];
      if (sz[v] != 4)
        throw ValidationError(
            "vertex link failure at corner " + std::to_string(k) + " of " +
            cell_str(bc.cells[ci]) + ": " + std::to_string(sz[v]) +
            " corners around the vertex");
    }

  // member curves close up and pass vertices straight
  auto corner_vertex = [&](const Corner& c) {
    return vt.vertex_of_corner[c.cell * 8 + c.k];
  };
  auto arc_endpoint_corner = [&](const BranchArc& a, bool start) {
    const SideEnd& se = a.sheets[0];
    Half h = bc.cells[se.cell].half;
    int idx = side_index_in_cycle(h, se.side);
    int n = cycle_length(h);
    return start ? Corner{se.cell, (idx - 1 + n) % n} : Corner{se.cell, idx};
  };
  for (int gi = 0; gi < static_cast<int>(bc.classes.size()); ++gi) {
    const GluingClass& g = bc.classes[gi];
    for (const auto& member : g.members) {
      int L = static_cast<int>(member.size());
      for (int i = 0; i < L; ++i) {
        const OrientedArc& cur = member[i];
        const OrientedArc& nxt = member[(i + 1) % L];
        Corner c_end = arc_endpoint_corner(g.arcs[cur.arc], !cur.forward);
        Corner c_start = arc_endpoint_corner(g.arcs[nxt.arc], nxt.forward);
        if (corner_vertex(c_end) != corner_vertex(c_start))
          throw ValidationError("gluing class member curve does not close");
        // geodesic passage: the next arc must leave through the edge-end
        // opposite the incoming one around the (4-corner) junction vertex
        auto step = [&](const Corner& c) {
          auto nc = corner_step(bc, c, true, all_edges_open());
          if (!nc) throw ValidationError("junction vertex walk blocked");
          return *nc;
        };
        auto crossed_arc = [&](const Corner& c) -> std::pair<int, int> {
          Half h = bc.cells[c.cell].half;
          SideEnd se{c.cell, cycle_side(h, (c.k + 1) % cycle_length(h))};
          auto it = bc.arc_of_sheet.find(se);
          return it == bc.arc_of_sheet.end() ? std::make_pair(-1, -1)
                                             : it->second;
        };
        Corner c1 = c_end;
        Corner c2 = step(c1), c3 = step(c2), c4 = step(c3);
        if (!(step(c4) == c1))
          throw ValidationError("junction vertex is not four-cornered");
        bool ok = false;
        if (crossed_arc(c1) == std::make_pair(gi, cur.arc))
          ok = crossed_arc(c3) == std::make_pair(gi, nxt.arc) &&
               (c_start == c3 || c_start == c4);
        else if (crossed_arc(c4) == std::make_pair(gi, cur.arc))
          ok = crossed_arc(c2) == std::make_pair(gi, nxt.arc) &&
               (c_start == c2 || c_start == c3);
        if (!ok)
          throw ValidationError(
              "gluing class member curve bends at a junction vertex");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// JSON interface

inline CellId parse_cell_ref(const nlohmann::json& j) {
  CellId c;
  c.copy = j.at(0).get<int>();
  c.block = j.at(1).get<int>();
  if (j.size() >= 3) c.half = half_from_name(j.at(2).get<std::string>());
  return c;
}

inline BlockComplex load_complex_doc(const nlohmann::json& doc) {
  BlockComplex bc;
  try {
    bc.name = doc.at("name").get<std::string>();
    bc.b = doc.at("metric").at("b").get<double>();
    bc.c = doc.at("metric").at("c").get<double>();
    bc.copies = doc.value("copies", 1);
    for (auto& cj : doc.at("cells")) bc.cells.push_back(parse_cell_ref(cj));
    std::map<CellId, int> idx;
    for (int i = 0; i < static_cast<int>(bc.cells.size()); ++i)
      idx[bc.cells[i]] = i;
    auto side_ref = [&](const nlohmann::json& j) -> SideEnd {
      CellId c;
      Side s;
      if (j.size() == 3) {
        c = CellId{j.at(0).get<int>(), j.at(1).get<int>(), Half::Whole};
        s = side_from_name(j.at(2).get<std::string>());
      } else {
        c = CellId{j.at(0).get<int>(), j.at(1).get<int>(),
                   half_from_name(j.at(2).get<std::string>())};
        s = side_from_name(j.at(3).get<std::string>());
      }
      auto it = idx.find(c);
      if (it == idx.end())
        throw ValidationError("side reference to unknown cell " + cell_str(c));
      return SideEnd{it->second, s};
    };
    for (auto& pj : doc.at("pairings")) {
      Pairing p;
      p.a = side_ref(pj.at("end_a"));
      p.b = side_ref(pj.at("end_b"));
      p.reversing =
          pj.value("orientation", "reversing") == std::string("reversing");
      bc.pairings.push_back(p);
    }
    if (doc.contains("gluing_classes")) {
      for (auto& gj : doc.at("gluing_classes")) {
        GluingClass g;
        for (auto& aj : gj.at("arcs")) {
          BranchArc a;
          for (auto& sj : aj.at("sheets")) a.sheets.push_back(side_ref(sj));
          a.reversing =
              aj.value("orientation", "reversing") == std::string("reversing");
          g.arcs.push_back(a);
        }
        for (auto& mj : gj.at("members")) {
          std::vector<OrientedArc> member;
          for (auto& oj : mj) {
            OrientedArc oa;
            oa.arc = oj.at(0).get<int>();
            oa.forward = oj.at(1).get<std::string>() == "+";
            member.push_back(oa);
          }
          g.members.push_back(std::move(member));
        }
        bc.classes.push_back(std::move(g));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("schema violation: ") + e.what());
  }
  validate_complex(bc);
  return bc;
}

inline BlockComplex load_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open complex file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("schema violation: ") + e.what());
  }
  BlockComplex bc = load_complex_doc(doc);
  return bc;
}

inline nlohmann::json complex_to_doc(const BlockComplex& bc) {
  nlohmann::json doc;
  doc["name"] = bc.name;
  doc["metric"] = {{"b", bc.b}, {"c", bc.c}};
  doc["copies"] = bc.copies;
  auto cell_ref = [&](const CellId& c) {
    return nlohmann::json::array(
        {c.copy, c.block, std::string(half_name(c.half))});
  };
  auto side_ref = [&](const SideEnd& se) {
    const CellId& c = bc.cells[se.cell];
    return nlohmann::json::array({c.copy, c.block,
                                  std::string(half_name(c.half)),
                                  std::string(side_name(se.side))});
  };
  doc["cells"] = nlohmann::json::array();
  for (auto& c : bc.cells) doc["cells"].push_back(cell_ref(c));
  doc["pairings"] = nlohmann::json::array();
  for (auto& p : bc.pairings)
    doc["pairings"].push_back(
        {{"end_a", side_ref(p.a)},
         {"end_b", side_ref(p.b)},
         {"orientation", p.reversing ? "reversing" : "preserving"}});
  doc["gluing_classes"] = nlohmann::json::array();
  for (auto& g : bc.classes) {
    nlohmann::json gj;
    gj["arcs"] = nlohmann::json::array();
    for (auto& a : g.arcs) {
      nlohmann::json aj;
      aj["sheets"] = nlohmann::json::array();
      for (auto& se : a.sheets) aj["sheets"].push_back(side_ref(se));
      aj["orientation"] = a.reversing ? "reversing" : "preserving";
      gj["arcs"].push_back(aj);
    }
    gj["members"] = nlohmann::json::array();
    for (auto& member : g.members) {
      nlohmann::json mj = nlohmann::json::array();
      for (auto& oa : member)
        mj.push_back(nlohmann::json::array(
            {oa.arc, std::string(oa.forward ? "+" : "-")}));
      gj["members"].push_back(mj);
    }
    doc["gluing_classes"].push_back(gj);
  }
  return doc;
}

}  // namespace amalgam
