#pragma once

#include "diffhom/catalog.hpp"
#include "diffhom/harmonic.hpp"
#include "diffhom/jet_action.hpp"
#include "diffhom/poly.hpp"
#include "diffhom/random.hpp"
#include "diffhom/suite.hpp"
#include "diffhom/tensor.hpp"
