// dfsqed.hpp: Umbrella header for the library layer.

#pragma once

#include "dfsqed/bell_teleport.hpp"
#include "dfsqed/dynamics.hpp"
#include "dfsqed/errors.hpp"
#include "dfsqed/gates.hpp"
#include "dfsqed/hilbert.hpp"
#include "dfsqed/logical.hpp"
#include "dfsqed/model.hpp"
#include "dfsqed/validate.hpp"
#include "dfsqed/version.hpp"
