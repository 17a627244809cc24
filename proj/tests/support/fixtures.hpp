#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/tour.hpp"

namespace kopt::testing {

// Figures label points from 1; tours below use those labels.
inline Tour tour_from_labels(std::initializer_list<std::size_t> labels) {
  std::vector<std::size_t> order;
  for (std::size_t l : labels) order.push_back(l - 1);
  return Tour(std::move(order));
}

inline DirectedEdge labeled(std::size_t a, std::size_t b) { return {a - 1, b - 1}; }

// Twelve points, an optimal tour and a simple 2-optimal tour with three crossings.
struct ThreeCrossings {
  Instance instance;
  Tour optimal;
  Tour two_optimal;
};

inline ThreeCrossings three_crossings() {
  std::vector<Point> pts = {{11, 12}, {9, 3},  {0, 7},  {11, 4}, {5, 13},  {3, 15},
                            {4, 12},  {11, 2}, {6, 9},  {10, 5}, {12, 14}, {14, 13}};
  return {Instance::planar(std::move(pts), PNorm::euclidean(), "three-crossings"),
          tour_from_labels({1, 11, 12, 10, 4, 8, 2, 9, 3, 7, 6, 5}),
          tour_from_labels({1, 4, 8, 2, 10, 3, 7, 6, 5, 9, 11, 12})};
}

// Forty-two points with an optimal tour and a crossing-free 2-optimal tour.
struct CrossingFreeFigure {
  Instance instance;
  Tour optimal;
  Tour two_optimal;
  std::vector<DirectedEdge> interior;     // drawn solid
  std::vector<DirectedEdge> exterior;     // drawn dotted
  std::vector<DirectedEdge> on_tour;      // drawn dashed
  DirectedEdge reference;                 // marked (x0, y0)
  std::vector<DirectedEdge> compatible;   // highlighted
};

inline CrossingFreeFigure crossing_free_figure() {
  std::vector<Point> pts = {
      {32, 5},  {18, 18}, {27, 1},  {15, 1},  {23, 13}, {40, 13}, {34, 1},  {15, 11}, {11, 3},
      {32, 11}, {35, 19}, {5, 10},  {21, 3},  {29, 19}, {25, 7},  {40, 7},  {36, 15}, {10, 16},
      {1, 20},  {32, 16}, {9, 7},   {28, 14}, {36, 6},  {2, 5},   {7, 1},   {40, 1},  {1, 14},
      {9, 20},  {20, 10}, {17, 6},  {6, 15},  {14, 15}, {22, 20}, {29, 8},  {1, 9},   {40, 20},
      {9, 12},  {14, 20}, {37, 10}, {1, 1},   {19, 14}, {5, 19}};
  CrossingFreeFigure f{
      Instance::planar(std::move(pts), PNorm::euclidean(), "crossing-free-figure"),
      tour_from_labels({26, 16, 23, 39, 6,  17, 36, 11, 20, 10, 22, 14, 33, 2,
                        41, 5,  29, 8,  32, 38, 28, 42, 19, 27, 31, 18, 37, 21,
                        12, 35, 24, 40, 25, 9,  4,  30, 13, 3,  15, 34, 1,  7}),
      tour_from_labels({26, 23, 16, 6,  36, 11, 14, 20, 17, 39, 10, 1,  34, 22,
                        5,  15, 29, 30, 8,  32, 41, 33, 2,  38, 18, 28, 42, 19,
                        31, 37, 12, 27, 35, 24, 40, 25, 21, 9,  4,  13, 3,  7}),
      {},
      {},
      {},
      labeled(26, 23),
      {}};
  for (auto [a, b] : std::initializer_list<std::pair<std::size_t, std::size_t>>{
           {26, 23}, {20, 17}, {17, 39}, {39, 10}, {10, 1},  {34, 22}, {22, 5},  {5, 15}, {15, 29},
           {29, 30}, {30, 8},  {41, 33}, {38, 18}, {18, 28}, {19, 31}, {25, 21}, {21, 9}}) {
    f.interior.push_back(labeled(a, b));
  }
  for (auto [a, b] : std::initializer_list<std::pair<std::size_t, std::size_t>>{
           {16, 6}, {6, 36}, {11, 14}, {14, 20}, {32, 41}, {2, 38},
           {31, 37}, {37, 12}, {12, 27}, {27, 35}, {4, 13}, {3, 7}}) {
    f.exterior.push_back(labeled(a, b));
  }
  for (auto [a, b] : std::initializer_list<std::pair<std::size_t, std::size_t>>{
           {23, 16}, {36, 11}, {1, 34}, {8, 32}, {33, 2}, {28, 42}, {42, 19},
           {35, 24}, {24, 40}, {40, 25}, {9, 4}, {13, 3}, {7, 26}}) {
    f.on_tour.push_back(labeled(a, b));
  }
  for (auto [a, b] : std::initializer_list<std::pair<std::size_t, std::size_t>>{
           {26, 23}, {20, 17}, {17, 39}, {34, 22}, {15, 29}, {30, 8}, {41, 33}, {18, 28}, {25, 21}}) {
    f.compatible.push_back(labeled(a, b));
  }
  return f;
}

}  // namespace kopt::testing
