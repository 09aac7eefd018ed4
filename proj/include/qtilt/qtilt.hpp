#pragma once

#include "qtilt/scalar.hpp"
#include "qtilt/matrix.hpp"
#include "qtilt/poly.hpp"
#include "qtilt/algebra.hpp"
#include "qtilt/presentation.hpp"
#include "qtilt/representation.hpp"
#include "qtilt/decompose.hpp"
#include "qtilt/nakayama.hpp"
#include "qtilt/approximation.hpp"
#include "qtilt/complex.hpp"
#include "qtilt/homotopy.hpp"
#include "qtilt/minimize.hpp"
#include "qtilt/complex_decompose.hpp"
#include "qtilt/tilting.hpp"
#include "qtilt/io.hpp"
#include "qtilt/report.hpp"
