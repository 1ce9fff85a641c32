#pragma once

/// @file incat.hpp
/// @brief Everything in one include.

#include "incat/errors.hpp"
#include "incat/random.hpp"
#include "incat/structure.hpp"
#include "incat/hf.hpp"
#include "incat/graph.hpp"
#include "incat/formula.hpp"
#include "incat/axioms.hpp"
#include "incat/iso.hpp"
#include "incat/lemmas.hpp"
