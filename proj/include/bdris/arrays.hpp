#pragma once

#include <Eigen/Dense>

namespace bdris {

/// Far-field steering vector of an N-element half-wavelength uniform linear
/// array: entry n = exp(j*pi*n*sin(theta)), n = 0..N-1.
Eigen::VectorXcd ula_response(int elements, double theta);

/// Steering vector of a half-wavelength nx-by-ny uniform planar array,
/// flattened x-fastest: entry (x, y) = exp(j*pi*(x*sin(theta)*cos(varphi) +
/// y*sin(theta)*sin(varphi))). All entries are unit modulus.
Eigen::VectorXcd upa_response(int nx, int ny, double theta, double varphi);

}  // namespace bdris
