// rabi.hpp — umbrella header

#pragma once

#include "rabi/dynamics.hpp"
#include "rabi/hilbert.hpp"
#include "rabi/jacobi.hpp"
#include "rabi/operators.hpp"
#include "rabi/params.hpp"
#include "rabi/spectra.hpp"
#include "rabi/sweep.hpp"
#include "rabi/symbolic.hpp"
#include "rabi/verify.hpp"
