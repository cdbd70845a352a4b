// Copyright 2026 The vdwforce Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace vdw {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;

// Spatial derivative of a tensor field: element l holds d/dx_l.
using TensorGradient = std::array<CMat3, 3>;

namespace si {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;            // m/s
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double mu0 = 1.0 / (epsilon0 * c * c);
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double bohr_radius = 5.29177210903e-11;      // m

inline constexpr double eV = elementary_charge;        // J
inline constexpr double debye = 1e-21 / c;             // C m
inline constexpr double atomic_dipole = elementary_charge * bohr_radius;  // C m
inline constexpr double nm = 1e-9;

}  // namespace si

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: species records, populations, configuration files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A real frequency sits on (or numerically next to) a pole of a response
// function. Outside the weak-coupling model's domain.
class PoleProximityError : public Error {
 public:
  using Error::Error;
};

// Two points that must be distinct coincide.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace vdw
