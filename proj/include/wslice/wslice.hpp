#pragma once

#include "wslice/catalog.hpp"
#include "wslice/cyclo.hpp"
#include "wslice/dual.hpp"
#include "wslice/laurent.hpp"
#include "wslice/liealg.hpp"
#include "wslice/linalg.hpp"
#include "wslice/longroot.hpp"
#include "wslice/poisson.hpp"
#include "wslice/rational.hpp"
#include "wslice/report.hpp"
#include "wslice/rmatrix.hpp"
#include "wslice/sl3case.hpp"
#include "wslice/verify.hpp"
#include "wslice/weylslice.hpp"
