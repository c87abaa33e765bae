#ifndef MATRIXCODE_MATRIX_HPP
#define MATRIXCODE_MATRIX_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrixcode/diagnostics.hpp"
#include "matrixcode/relations.hpp"
#include "matrixcode/state.hpp"

namespace mxc {

/// One populated cell. The rules denote their union; their order is the
/// deterministic scan order.
struct Cell {
  std::string from;
  std::string to;
  std::vector<RelationExpr> rules;
  SourceLoc loc;
};

bool operator==(const Cell& a, const Cell& b);

/// A code matrix: control states K, start S, halt H, declarations for the
/// data states, and cells indexed internally as [from][to]. Cells are kept
/// in declaration order, which is the scan order out of each state.
struct CodeMatrix {
  std::string name;
  Schema schema;
  std::vector<std::string> states;
  std::string start;
  std::string halt;
  std::vector<Cell> cells;

  std::optional<std::size_t> state_index(const std::string& k) const;
  const Cell* find_cell(const std::string& from, const std::string& to) const;
  /// Cells leaving `from`, in scan order.
  std::vector<const Cell*> cells_from(const std::string& from) const;
  /// The cell's rules folded into one Union expression.
  static RelationExpr cell_relation(const Cell& c);
};

bool operator==(const CodeMatrix& a, const CodeMatrix& b);

/// Reports every violated structural invariant; never modifies `m`.
Diagnostics validate(const CodeMatrix& m);

/// A K-by-K matrix of relation expressions without the start/halt
/// restrictions; absent entries denote the empty relation.
class RelationMatrix {
 public:
  RelationMatrix() = default;
  explicit RelationMatrix(std::vector<std::string> states) : states_(std::move(states)) {}

  static RelationMatrix from_code(const CodeMatrix& m);
  /// Identity relation on the diagonal, empty elsewhere.
  static RelationMatrix identity(std::vector<std::string> states);

  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }

  const RelationExpr* at(std::size_t from, std::size_t to) const;
  void set(std::size_t from, std::size_t to, RelationExpr r);
  std::size_t nonempty_cells() const { return cells_.size(); }

 private:
  std::vector<std::string> states_;
  std::map<std::pair<std::size_t, std::size_t>, RelationExpr> cells_;
};

/// (M;N)[i,k] = union over j of M[i,j];N[j,k]. Throws std::invalid_argument
/// when the state lists differ.
RelationMatrix product(const RelationMatrix& m, const RelationMatrix& n);

/// M^0 = I, M^n = M^(n-1);M.
RelationMatrix power(const RelationMatrix& m, unsigned n);

/// Image of a possibly empty cell.
StateSet cell_image(const RelationMatrix& m, std::size_t from, std::size_t to, const DataState& d);

}  // namespace mxc

#endif  // MATRIXCODE_MATRIX_HPP
