#pragma once

#include "embedded_graph.hpp"
#include "expression.hpp"
#include "expression_builders.hpp"
#include "expression_io.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "graph_ops.hpp"
#include "hereditary_product.hpp"
#include "induced_product.hpp"
#include "planar.hpp"
#include "product.hpp"
#include "tree_decomposition.hpp"
#include "treewidth.hpp"
#include "twinwidth.hpp"
