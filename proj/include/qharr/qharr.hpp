#pragma once

#include "qharr/arrangement.hpp"
#include "qharr/cohomology.hpp"
#include "qharr/derham.hpp"
#include "qharr/hlinalg.hpp"
#include "qharr/json_io.hpp"
#include "qharr/matroid.hpp"
#include "qharr/os_algebra.hpp"
#include "qharr/poincare.hpp"
#include "qharr/quaternion.hpp"
#include "qharr/rational.hpp"
