#pragma once

// JSON readers and writers for the objects the command line moves around.
// All numbers are exact rational strings ("p" or "p/q"); writers emit keys
// in a fixed order and walk map-backed containers in their sorted order, so
// equal inputs always serialize to identical bytes.

#include "painted/cohomology.hpp"
#include "painted/formal.hpp"

#include <string>
#include <vector>

namespace painted {

std::string json_of_matrix(const Mat& m);

std::string json_of_lalgebra(const LAlgebra& alg);
LAlgebra lalgebra_of_json(const std::string& text);

// Square-coefficient series only; the matrix dimension is written as dimF.
std::string json_of_series(const Series& s);
Series series_of_json(const std::string& text);

// Vector fields list their coordinates once and then one component per
// coordinate, each a term list with scalar values.
std::string json_of_field(const VectorField& a);
VectorField field_of_json(const std::string& text);

std::string json_of_betti(const std::vector<int>& dims);

// A 2-partition is written as the part containing w1.
std::string json_of_partition(const PaintedSet& s, TwoPartition p);
TwoPartition partition_of_json(const PaintedSet& s, const std::string& text);

// A tree is a bare array of its edge partitions in canonical order.
std::string json_of_tree(const PaintedSet& s, const GoodFamily& fam);
GoodFamily tree_of_json(const PaintedSet& s, const std::string& text);

// A graded class: its grade plus tree/coeff terms.
std::string json_of_coords(const PaintedSet& s, int degree, const Coords& x);
Coords coords_of_json(const PaintedSet& s, const std::string& text, int& degree);

} // namespace painted
