#pragma once

#include <string>

namespace xsblab {

enum class Domain { Rectangle, UnitDisk };
enum class Boundary { Dirichlet, Neumann };

// Flat 2-D model domain carrying its boundary condition.  The rectangle is
// [0, side_x] x [0, side_y]; the disk is the unit disk.
struct ManifoldSpec {
    Domain domain = Domain::Rectangle;
    double side_x = 0.0; // rectangle only
    double side_y = 0.0;
    Boundary boundary = Boundary::Dirichlet;

    static ManifoldSpec rectangle(double sx, double sy, Boundary bc);
    static ManifoldSpec unit_disk(Boundary bc);

    void validate() const; // throws InvalidArgument
    double area() const;
    std::string describe() const; // canonical "rectangle(3.14..,3.14..,dirichlet)"

    bool operator==(const ManifoldSpec&) const = default;
};

const char* to_string(Domain d);
const char* to_string(Boundary b);

} // namespace xsblab
