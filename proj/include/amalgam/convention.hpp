#pragma once

// Side labeling and cell-boundary conventions for the octagonal building block.
//
// A whole block is a right-angled octagon with side pattern (c,a,b,a,c,a,b,a).
// Sides are listed in a fixed cyclic boundary order; corner k sits between
// side k and side k+1 (mod count). Subdivided blocks are cut along the
// perpendicular M joining the midpoints of the two b-sides, giving a left and
// a right right-angled hexagon.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace amalgam {

enum class Side : std::uint8_t {
  CL = 0,   // left side, length c
  ATL = 1,  // top-left, length a
  BT = 2,   // top, length b
  ATR = 3,  // top-right, length a
  CR = 4,   // right, length c
  ABR = 5,  // bottom-right, length a
  BB = 6,   // bottom, length b
  ABL = 7,  // bottom-left, length a
  BTL = 8,  // left half of BT (subdivided cells)
  BTR = 9,  // right half of BT
  BBL = 10, // left half of BB
  BBR = 11, // right half of BB
  M = 12,   // bisector arc between the b-side midpoints
};

constexpr int kSideCount = 13;

enum class LengthClass : std::uint8_t { a, b, c, m, hb };

enum class Half : std::uint8_t { Whole, Left, Right };

inline LengthClass length_class(Side s) {
  switch (s) {
    case Side::CL:
    case Side::CR: return LengthClass::c;
    case Side::BT:
    case Side::BB: return LengthClass::b;
    case Side::BTL:
    case Side::BTR:
    case Side::BBL:
    case Side::BBR: return LengthClass::hb;
    case Side::M: return LengthClass::m;
    default: return LengthClass::a;
  }
}

inline const char* side_name(Side s) {
  static const char* names[kSideCount] = {"CL",  "ATL", "BT",  "ATR", "CR",
                                          "ABR", "BB",  "ABL", "BTL", "BTR",
                                          "BBL", "BBR", "M"};
  return names[static_cast<int>(s)];
}

inline Side side_from_name(const std::string& n) {
  for (int i = 0; i < kSideCount; ++i)
    if (n == side_name(static_cast<Side>(i))) return static_cast<Side>(i);
  throw std::runtime_error("unknown side label: " + n);
}

inline const char* half_name(Half h) {
  switch (h) {
    case Half::Whole: return "W";
    case Half::Left: return "L";
    default: return "R";
  }
}

inline Half half_from_name(const std::string& n) {
  if (n == "W") return Half::Whole;
  if (n == "L") return Half::Left;
  if (n == "R") return Half::Right;
  throw std::runtime_error("unknown cell half: " + n);
}

// Boundary cycles. Side k of a cycle runs from corner k-1 to corner k; each
// side's canonical arc-length parameterization follows this direction.
inline const std::array<Side, 8>& whole_cycle() {
  static const std::array<Side, 8> c = {Side::CL,  Side::ATL, Side::BT,
                                        Side::ATR, Side::CR,  Side::ABR,
                                        Side::BB,  Side::ABL};
  return c;
}

inline const std::array<Side, 6>& left_cycle() {
  static const std::array<Side, 6> c = {Side::CL, Side::ATL, Side::BTL,
                                        Side::M,  Side::BBL, Side::ABL};
  return c;
}

inline const std::array<Side, 6>& right_cycle() {
  static const std::array<Side, 6> c = {Side::BTR, Side::ATR, Side::CR,
                                        Side::ABR, Side::BBR, Side::M};
  return c;
}

inline int cycle_length(Half h) { return h == Half::Whole ? 8 : 6; }

inline Side cycle_side(Half h, int k) {
  switch (h) {
    case Half::Whole: return whole_cycle()[k];
    case Half::Left: return left_cycle()[k];
    default: return right_cycle()[k];
  }
}

inline int side_index_in_cycle(Half h, Side s) {
  int n = cycle_length(h);
  for (int k = 0; k < n; ++k)
    if (cycle_side(h, k) == s) return k;
  throw std::runtime_error(std::string("side ") + side_name(s) +
                           " not on a " + half_name(h) + " cell");
}

inline bool cell_has_side(Half h, Side s) {
  int n = cycle_length(h);
  for (int k = 0; k < n; ++k)
    if (cycle_side(h, k) == s) return true;
  return false;
}

// Block index arithmetic: blocks are numbered 1..8, wrap maps 0 -> 8.
inline int block_mod8(int n) {
  int r = ((n - 1) % 8 + 8) % 8;
  return r + 1;
}

}  // namespace amalgam
