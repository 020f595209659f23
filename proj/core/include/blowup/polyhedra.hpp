#pragma once

#include "blowup/exact.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace blowup {

using IntVec = std::vector<Integer>;

// Extreme rays of the pointed cone { x : a_j . x >= 0 for all j } (plain dot
// product). Double description with combinatorial adjacency. Rows must span.
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& constraints);

// Primitive integer vector on the same ray.
IntVec primitive(IntVec v);

// Integer points of a bounded polyhedron { x in Z^n : a_j . x <= b_j } by
// Fourier-Motzkin projection. Throws InputError if a coordinate is unbounded.
class IntegerPolytope {
public:
    struct Row {
        std::vector<Rational> a;
        Rational b;
    };

    explicit IntegerPolytope(size_t nvars) : n_(nvars) {}
    void add_le(std::vector<Rational> a, Rational b);
    void add_ge(std::vector<Rational> a, Rational b);  // a.x >= b

    // Calls visit for every integer point; visit returning false stops early.
    // Returns the number of points visited. max_points guards runaway boxes.
    size_t enumerate(const std::function<bool(const std::vector<long>&)>& visit,
                     size_t max_points = 50'000'000) const;

    // Coordinate ranges of the real relaxation (after projection).
    std::vector<std::pair<long, long>> coordinate_box() const;

private:
    void project() const;
    size_t n_;
    std::vector<Row> rows_;
    mutable std::vector<std::vector<Row>> levels_;  // levels_[k]: rows in x_0..x_k
    mutable bool projected_ = false;
};

}  // namespace blowup
