#include "bdris/arrays.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace bdris {

Eigen::VectorXcd ula_response(int elements, double theta) {
    if (elements < 1) throw std::invalid_argument("ula_response: need >= 1 element");
    Eigen::VectorXcd v(elements);
    const double step = std::numbers::pi * std::sin(theta);
    for (int n = 0; n < elements; ++n) {
        v(n) = std::polar(1.0, step * n);
    }
    return v;
}

Eigen::VectorXcd upa_response(int nx, int ny, double theta, double varphi) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("upa_response: need >= 1 element per axis");
    Eigen::VectorXcd v(nx * ny);
    const double px = std::numbers::pi * std::sin(theta) * std::cos(varphi);
    const double py = std::numbers::pi * std::sin(theta) * std::sin(varphi);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            v(y * nx + x) = std::polar(1.0, px * x + py * y);
        }
    }
    return v;
}

}  // namespace bdris
