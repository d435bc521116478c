#pragma once

// Umbrella header: minimum distance bounds for quasi-twisted codes over
// finite fields, with exact-distance oracles and a comparison harness.
// The spec-file loader lives in spec_file.hpp and is not pulled in here,
// since it needs the vendored JSON parser on the include path.

#include "qtbounds/codespec.hpp"
#include "qtbounds/compare.hpp"
#include "qtbounds/concat.hpp"
#include "qtbounds/constabounds.hpp"
#include "qtbounds/extnat.hpp"
#include "qtbounds/gf.hpp"
#include "qtbounds/lally.hpp"
#include "qtbounds/linalg.hpp"
#include "qtbounds/poly.hpp"
#include "qtbounds/qtcode.hpp"
#include "qtbounds/reference_codes.hpp"
#include "qtbounds/spectral.hpp"
#include "qtbounds/tower.hpp"
