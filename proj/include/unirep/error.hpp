#ifndef UNIREP_ERROR_HPP
#define UNIREP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace unirep {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Notation errors carry the offset of the offending character.
struct parse_error : error {
  parse_error(const std::string& what, std::size_t position)
      : error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// A cancellation whose categories do not fit.
struct type_error : error {
  using error::error;
};

// Malformed or dangling replay scripts.
struct script_error : error {
  using error::error;
};

// Dependency graphs violating the tree constraints.
struct graph_error : error {
  using error::error;
};

// A functor-argument pair with no licensing dependency edge.
struct licensing_error : error {
  using error::error;
};

// Search exceeded its expansion budget.
struct budget_error : error {
  using error::error;
};

struct io_error : error {
  using error::error;
};

}  // namespace unirep

#endif
