#ifndef UNIREP_UNIREP_HPP
#define UNIREP_UNIREP_HPP

// Umbrella header.  The library is header-only; include this or pick the
// pieces you need.

#include "unirep/analysis.hpp"
#include "unirep/category.hpp"
#include "unirep/correspondence.hpp"
#include "unirep/delta_expr.hpp"
#include "unirep/depgraph.hpp"
#include "unirep/derivation.hpp"
#include "unirep/error.hpp"
#include "unirep/pstree.hpp"
#include "unirep/search.hpp"
#include "unirep/sentence.hpp"
#include "unirep/unified.hpp"

#endif
