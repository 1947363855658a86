#pragma once

#include "tropk4/bitangents.hpp"
#include "tropk4/tropcurve.hpp"

#include <string>
#include <vector>

namespace tropk4::svg {

// A labelled marker drawn on top of a curve plot.
struct Marker {
    Pt at;
    std::string label;
    bool hollow = false;
};

// Tropical curve with multiplicity labels; the viewport is the bounded part
// (plus markers) grown by 2 units, rays are clipped at its border.
std::string curve(const TropicalCurve2D& c, const std::vector<Marker>& markers = {},
                  const std::string& title = "");

// Newton subdivision of the degree-4 triangle with heights at the lattice points.
std::string subdivision(const NewtonSubdivision& s, const std::string& title = "");

// Markers for bitangent centers: one per distinct center, labelled by count.
std::vector<Marker> center_markers(const std::vector<Pt>& centers);
std::vector<Marker> center_markers(const TropicalBitangentSet& s);

}  // namespace tropk4::svg
