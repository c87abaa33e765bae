#ifndef MATRIXCODE_VALUE_HPP
#define MATRIXCODE_VALUE_HPP

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mxc {

/// Position in a source file, 1-based. A zero line means "synthesized".
struct SourceLoc {
  int line = 0;
  int column = 0;

  std::string str() const;
  bool operator==(const SourceLoc&) const = default;
};

/// Raised for ill-formed programs at run time: unbound or unset reads,
/// index out of range, division by zero, overflow, type mismatch.
/// An empty image is never reported through this type.
class EvalError : public std::runtime_error {
 public:
  EvalError(SourceLoc loc, const std::string& what);

  const SourceLoc& loc() const noexcept { return loc_; }

 private:
  SourceLoc loc_;
};

/// Marker for a declared but not yet written variable, shown as `?`.
struct Unset {
  auto operator<=>(const Unset&) const = default;
};

struct Sym {
  char c = ' ';
  auto operator<=>(const Sym&) const = default;
};

/// Fixed-length integer array; elements may individually be unset.
struct IntArray {
  std::vector<std::optional<std::int64_t>> items;
  auto operator<=>(const IntArray&) const = default;
};

/// Sequence of integers consumed front-first.
struct Stream {
  std::deque<std::int64_t> items;
  auto operator<=>(const Stream&) const = default;
};

enum class Direction : char { Left = 'L', Right = 'R', Stay = 'd' };

std::optional<Direction> direction_from_char(char c);

/// Sparse tape, unbounded both ways; unwritten squares read as `blank`.
struct Tape {
  std::map<std::int64_t, char> cells;
  std::int64_t head = 0;
  Direction dir = Direction::Stay;
  char blank = '_';

  char read() const;
  /// Writes at the head, then moves the head one square in `dir`.
  void write(char c);

  /// Symbols from the lowest to the highest written square, space separated.
  std::string contents() const;

  auto operator<=>(const Tape&) const = default;
};

using Value = std::variant<Unset, std::int64_t, bool, Sym, IntArray, Stream, Tape>;

enum class VarKind { Int, Bool, Sym, Array, Stream, Text, Tape };

const char* kind_name(VarKind kind);
std::string value_type_name(const Value& v);

/// Renders a value the way trace tables show it: `?` for unset,
/// `{2,3,?}` for arrays, `[1,3]` for streams, `"23"` for text streams.
std::string format_value(const Value& v, VarKind kind);

bool is_unset(const Value& v);

}  // namespace mxc

#endif  // MATRIXCODE_VALUE_HPP
