#include "rls/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rls {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_field(const std::string& path, const RegionalField& field, const Grid& grid,
                double t) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("save_field: cannot open " + path);
    std::fprintf(fp, "%d %d %.17g %.17g\n", grid.nx, grid.ny, grid.h, t);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int ix = grid.idx(i, j);
            std::fprintf(fp, "%.17g %d\n", field.varphi[ix], field.chi[ix]);
        }
    std::fclose(fp);
}

LoadedField load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_field: cannot open " + path);
    LoadedField f;
    in >> f.nx >> f.ny >> f.h >> f.t;
    if (!in || f.nx <= 0 || f.ny <= 0)
        throw std::runtime_error("load_field: malformed header in " + path);
    f.varphi.resize(static_cast<std::size_t>(f.nx) * f.ny);
    f.chi.resize(f.varphi.size());
    for (std::size_t m = 0; m < f.varphi.size(); ++m) {
        in >> f.varphi[m] >> f.chi[m];
        if (!in) throw std::runtime_error("load_field: truncated data in " + path);
    }
    return f;
}

void save_interface_csv(const std::string& path, const InterfaceGraph& graph) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("save_interface_csv: cannot open " + path);
    std::fprintf(fp, "x0,y0,x1,y1,region_a,region_b\n");
    for (const Segment& s : graph.segments)
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%d,%d\n", s.a.x, s.a.y, s.b.x, s.b.y, s.ra,
                     s.rb);
    std::fclose(fp);
}

}  // namespace rls
