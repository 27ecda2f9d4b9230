#include "xsblab/manifold.hpp"

#include <cmath>
#include <cstdio>

#include "xsblab/errors.hpp"

namespace xsblab {

ManifoldSpec ManifoldSpec::rectangle(double sx, double sy, Boundary bc) {
    ManifoldSpec s;
    s.domain = Domain::Rectangle;
    s.side_x = sx;
    s.side_y = sy;
    s.boundary = bc;
    s.validate();
    return s;
}

ManifoldSpec ManifoldSpec::unit_disk(Boundary bc) {
    ManifoldSpec s;
    s.domain = Domain::UnitDisk;
    s.boundary = bc;
    return s;
}

void ManifoldSpec::validate() const {
    if (domain == Domain::Rectangle) {
        if (!(side_x > 0.0) || !(side_y > 0.0) || !std::isfinite(side_x) || !std::isfinite(side_y)) {
            throw InvalidArgument("ManifoldSpec: rectangle sides must be positive and finite");
        }
    }
}

double ManifoldSpec::area() const {
    return domain == Domain::Rectangle ? side_x * side_y : M_PI;
}

std::string ManifoldSpec::describe() const {
    if (domain == Domain::Rectangle) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "rectangle(%.17g,%.17g,%s)", side_x, side_y,
                      to_string(boundary));
        return buf;
    }
    return std::string("unit_disk(") + to_string(boundary) + ")";
}

const char* to_string(Domain d) {
    return d == Domain::Rectangle ? "rectangle" : "unit_disk";
}

const char* to_string(Boundary b) {
    return b == Boundary::Dirichlet ? "dirichlet" : "neumann";
}

} // namespace xsblab
