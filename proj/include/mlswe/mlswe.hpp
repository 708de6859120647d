#pragma once

#include "mlswe/checks.hpp"
#include "mlswe/dg1d.hpp"
#include "mlswe/dg2d.hpp"
#include "mlswe/fv1d.hpp"
#include "mlswe/run.hpp"
