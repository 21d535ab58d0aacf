#pragma once

#include "coxtorus/extension.hpp"

#include <array>
#include <string>
#include <vector>

namespace cxt {

// Chambers of a compact hyperbolic triangle group in the Poincaré disk.  Coordinates are
// doubles for drawing only; Q-membership comes from the exact projection to W.
struct DiskTriangle {
    Word word;                                  // ShortLex normal form of the chamber
    bool in_q = false;                          // the chamber lies in the Q-orbit of the fundamental one
    std::array<std::array<double, 2>, 3> vertices;  // vertex i has type i
};

// chambers of word length <= depth, depth-first along the ShortLex prefix tree
std::vector<DiskTriangle> disk_tessellation(const HatGroup& h, int depth);

struct SvgOptions {
    int depth = 6;
    bool skeleton = false;  // only edges and typed vertices (the dessin)
    int size = 800;         // pixels
    int samples = 12;       // points per geodesic edge
};

// NOT_APPLICABLE unless hat W is a compact hyperbolic triangle group
std::string tessellation_svg(const HatGroup& h, const SvgOptions& opt = {});

}  // namespace cxt
