#pragma once

#include <tropsys/bivariate.hpp>
#include <tropsys/cell_solver.hpp>
#include <tropsys/dispatch.hpp>
#include <tropsys/error.hpp>
#include <tropsys/instance_io.hpp>
#include <tropsys/matrix.hpp>
#include <tropsys/oracle.hpp>
#include <tropsys/preprocess.hpp>
#include <tropsys/rational.hpp>
#include <tropsys/reductions.hpp>
#include <tropsys/scalar.hpp>
#include <tropsys/win_enum.hpp>
