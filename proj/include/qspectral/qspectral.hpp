#pragma once

#include "qspectral/error.hpp"
#include "qspectral/quaternion.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/hilbert.hpp"
#include "qspectral/spectral.hpp"
#include "qspectral/compact.hpp"
#include "qspectral/random.hpp"
#include "qspectral/io.hpp"
