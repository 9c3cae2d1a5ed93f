#pragma once

#include <string>
#include <vector>

#include "wf/simp.hpp"
#include "wf/weight.hpp"

namespace wf::fixtures {

GoodCompData point();
GoodCompData circle();
GoodCompData two_points();
GoodCompData circle3();
GoodCompData sphere();           // hexagonal bipyramid
GoodCompData projective_plane(); // blown-up sphere, ten vertices

// staircase torus with chosen vertical and horizontal divisor circles
GoodCompData torus_grid(int cols, int rows, const std::vector<int>& vcols,
                        const std::vector<int>& hrows);

GoodCompData torus();        // no divisors
GoodCompData p1xr();         // one horizontal circle
GoodCompData s1xrstar();     // two horizontal circles
GoodCompData rstar2_torus(); // two vertical and two horizontal circles
GoodCompData xline3();       // four vertical circles and one horizontal

GoodCompData rstar();
GoodCompData rline();
GoodCompData r2_rp2();       // the plane as a projective plane minus a line
GoodCompData r2minus0();     // punctured plane: two disjoint core circles
GoodCompData rstar2_p2();    // three lines in the projective plane
GoodCompData klein2();       // blown-up projective plane, crossing divisors

HyperresolutionInput lemniscate();
HyperresolutionInput lemniscate_rstar();

BlowupTransverseInput blowup_transverse();

struct ContainedInput {
    GoodCompData after;
    GoodCompData before;
    SimplicialMapData b;
};
ContainedInput blowup_contained();

BlowupSquareData sphere_blowup_square();

// all good-compactification fixtures by name, in emission order
std::vector<std::string> corpus_names();
GoodCompData by_name(const std::string& name);

}  // namespace wf::fixtures
