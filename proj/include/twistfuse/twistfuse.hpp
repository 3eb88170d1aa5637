#pragma once

#include "twistfuse/cartan.hpp"
#include "twistfuse/error.hpp"
#include "twistfuse/fold.hpp"
#include "twistfuse/fusion.hpp"
#include "twistfuse/matrix.hpp"
#include "twistfuse/parallel.hpp"
#include "twistfuse/rep.hpp"
#include "twistfuse/smatrix.hpp"
#include "twistfuse/weyl.hpp"
