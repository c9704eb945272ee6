// Umbrella header for the algebra. The JSON and text formats live in
// wittcls/io.hpp, which additionally needs nlohmann/json.

#ifndef WITTCLS_WITTCLS_HPP
#define WITTCLS_WITTCLS_HPP

#include "wittcls/arith.hpp"
#include "wittcls/field.hpp"
#include "wittcls/hilbert.hpp"
#include "wittcls/witt.hpp"
#include "wittcls/witt_equal.hpp"
#include "wittcls/obstruction.hpp"
#include "wittcls/random.hpp"
#include "wittcls/sl2.hpp"
#include "wittcls/cocycles.hpp"
#include "wittcls/surfaces.hpp"
#include "wittcls/campaigns.hpp"

#endif  // WITTCLS_WITTCLS_HPP
