#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "../zaremba.hpp"

namespace zaremba::app {

// 17 significant digits; non-finite values print as "nan".
std::string fmt(double v);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const nlohmann::json& j);

std::string grid_csv(const FieldGrid& g);
std::string density_csv(const Discretization& D, const Eigen::VectorXcd& mu);

struct ConvergeRow {
    int n = 0;
    std::complex<double> u;
    double delta = 0.0;
};
std::string converge_csv(const std::vector<ConvergeRow>& rows);

}  // namespace zaremba::app
