#ifndef TRANSDUCERS_RTE_HPP_
#define TRANSDUCERS_RTE_HPP_

#include "transducers/rte/ast.hpp"
#include "transducers/rte/domain.hpp"
#include "transducers/rte/eval.hpp"
#include "transducers/rte/parser.hpp"
#include "transducers/rte/rewrite.hpp"
#include "transducers/rte/stdlib.hpp"

#endif  // TRANSDUCERS_RTE_HPP_
