#pragma once
// Surface documents: {"schema": 1, "variant": "...", parameters...}.
//
//   shifted_sphere    rho0 (1), lambda (sqrt(3)/2 rho0^2)
//   heis_sphere       rho0 (1)
//   dilation_cone     c, r_lo (0.5), r_hi (2)
//   cylinder          radius (1), period (1)
//   vertical_plane    a, b, c (0), half_width (1)
//   foliated_graph    sign, c (0), domain
//   polynomial_graph  terms [[i, j, coeff], ...], domain
//   torus_s3          rho1 or rho1_squared
//
// domain is {"lo": [x, y], "hi": [x, y]}.  Unknown keys are rejected.

#include <string>

#include "json.hpp"

#include "crlab/surfaces.hpp"

namespace crlab {

SurfacePtr surface_from_json(const nlohmann::json& doc);
// Inline JSON when `arg` starts with '{', otherwise a file path.
SurfacePtr load_surface(const std::string& arg);
nlohmann::json read_json_arg(const std::string& arg);

}  // namespace crlab
