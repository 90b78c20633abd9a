#pragma once

#include "lgk/exactlin/cyclotomic.hpp"
#include "lgk/exactlin/elimination.hpp"
#include "lgk/exactlin/modular.hpp"
#include "lgk/exactlin/rational.hpp"
#include "lgk/exactlin/sparse_matrix.hpp"
#include "lgk/exactlin/sparse_vec.hpp"
