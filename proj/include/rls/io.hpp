#pragma once

#include <string>

#include "rls/geometry.hpp"
#include "rls/grid.hpp"
#include "rls/regional.hpp"

namespace rls {

/// Text snapshot: header "nx ny h t" then row-major "varphi chi" pairs,
/// interior cells only, 17 significant digits.
void save_field(const std::string& path, const RegionalField& field, const Grid& grid,
                double t);

struct LoadedField {
    int nx = 0, ny = 0;
    double h = 0.0, t = 0.0;
    std::vector<double> varphi;  // row-major interior values
    std::vector<int> chi;
};

LoadedField load_field(const std::string& path);

/// CSV of segment endpoints and region pairs: x0,y0,x1,y1,ra,rb.
void save_interface_csv(const std::string& path, const InterfaceGraph& graph);

std::string format_g17(double v);

}  // namespace rls
