#include "zaremba/app/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace zaremba::app {

std::string fmt(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write " + path);
    out << text;
    if (!out) throw config_error("failed writing " + path);
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

std::string grid_csv(const FieldGrid& g) {
    std::string s = "x1,x2,mask,re,im\n";
    s.reserve(g.points.size() * 96);
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        s += fmt(g.points[i].x);
        s += ',';
        s += fmt(g.points[i].y);
        s += ',';
        s += std::to_string(g.mask[i]);
        s += ',';
        s += fmt(g.values[i].real());
        s += ',';
        s += fmt(g.values[i].imag());
        s += '\n';
    }
    return s;
}

std::string density_csv(const Discretization& D, const Eigen::VectorXcd& mu) {
    std::string s = "segment,s,re_mu,im_mu\n";
    for (int q = 0; q < D.num_segments(); ++q) {
        const SegmentMesh& m = D.segment(q).mesh;
        for (int i = 0; i < m.n; ++i) {
            const auto v = mu(D.offset(q) + i);
            s += std::to_string(q) + "," + fmt(m.s[i]) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
        }
    }
    return s;
}

std::string converge_csv(const std::vector<ConvergeRow>& rows) {
    std::string s = "n,re_u,im_u,delta_vs_finest\n";
    for (const auto& r : rows)
        s += std::to_string(r.n) + "," + fmt(r.u.real()) + "," + fmt(r.u.imag()) + "," + fmt(r.delta) + "\n";
    return s;
}

}  // namespace zaremba::app
