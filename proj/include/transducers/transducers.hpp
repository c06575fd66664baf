#ifndef TRANSDUCERS_TRANSDUCERS_HPP_
#define TRANSDUCERS_TRANSDUCERS_HPP_

#include "transducers/analysis.hpp"
#include "transducers/constructions.hpp"
#include "transducers/difftest.hpp"
#include "transducers/dot.hpp"
#include "transducers/errors.hpp"
#include "transducers/fixtures.hpp"
#include "transducers/io.hpp"
#include "transducers/machines.hpp"
#include "transducers/nfa.hpp"
#include "transducers/nft_ops.hpp"
#include "transducers/outcome.hpp"
#include "transducers/regex.hpp"
#include "transducers/rte.hpp"
#include "transducers/words.hpp"

#endif  // TRANSDUCERS_TRANSDUCERS_HPP_
