#include "matrixcode/value.hpp"

#include <sstream>

#include "matrixcode/diagnostics.hpp"

namespace mxc {

std::string SourceLoc::str() const {
  if (line == 0) return "<builtin>";
  return std::to_string(line) + ":" + std::to_string(column);
}

EvalError::EvalError(SourceLoc loc, const std::string& what)
    : std::runtime_error(loc.line ? loc.str() + ": " + what : what), loc_(loc) {}

std::optional<Direction> direction_from_char(char c) {
  switch (c) {
    case 'L': return Direction::Left;
    case 'R': return Direction::Right;
    case 'd': return Direction::Stay;
    default: return std::nullopt;
  }
}

char Tape::read() const {
  auto it = cells.find(head);
  return it == cells.end() ? blank : it->second;
}

void Tape::write(char c) {
  cells[head] = c;
  switch (dir) {
    case Direction::Left: --head; break;
    case Direction::Right: ++head; break;
    case Direction::Stay: break;
  }
}

std::string Tape::contents() const {
  std::string out;
  if (cells.empty()) return out;
  const auto lo = cells.begin()->first;
  const auto hi = cells.rbegin()->first;
  for (auto i = lo; i <= hi; ++i) {
    if (i != lo) out += ' ';
    auto it = cells.find(i);
    out += it == cells.end() ? blank : it->second;
  }
  return out;
}

const char* kind_name(VarKind kind) {
  switch (kind) {
    case VarKind::Int: return "int";
    case VarKind::Bool: return "bool";
    case VarKind::Sym: return "sym";
    case VarKind::Array: return "int[]";
    case VarKind::Stream: return "stream";
    case VarKind::Text: return "text";
    case VarKind::Tape: return "tape";
  }
  return "?";
}

std::string value_type_name(const Value& v) {
  struct Visitor {
    std::string operator()(const Unset&) const { return "unset"; }
    std::string operator()(std::int64_t) const { return "int"; }
    std::string operator()(bool) const { return "bool"; }
    std::string operator()(const Sym&) const { return "sym"; }
    std::string operator()(const IntArray&) const { return "int[]"; }
    std::string operator()(const Stream&) const { return "stream"; }
    std::string operator()(const Tape&) const { return "tape"; }
  };
  return std::visit(Visitor{}, v);
}

bool is_unset(const Value& v) { return std::holds_alternative<Unset>(v); }

std::string format_value(const Value& v, VarKind kind) {
  std::ostringstream os;
  if (std::holds_alternative<Unset>(v)) {
    os << '?';
  } else if (auto i = std::get_if<std::int64_t>(&v)) {
    os << *i;
  } else if (auto b = std::get_if<bool>(&v)) {
    os << (*b ? "true" : "false");
  } else if (auto s = std::get_if<Sym>(&v)) {
    os << '\'' << s->c << '\'';
  } else if (auto a = std::get_if<IntArray>(&v)) {
    os << '{';
    for (std::size_t i = 0; i < a->items.size(); ++i) {
      if (i) os << ',';
      if (a->items[i]) os << *a->items[i]; else os << '?';
    }
    os << '}';
  } else if (auto st = std::get_if<Stream>(&v)) {
    if (kind == VarKind::Text) {
      os << '"';
      for (auto c : st->items) os << static_cast<char>(c);
      os << '"';
    } else {
      os << '[';
      for (std::size_t i = 0; i < st->items.size(); ++i) {
        if (i) os << ',';
        os << st->items[i];
      }
      os << ']';
    }
  } else if (auto t = std::get_if<Tape>(&v)) {
    os << t->contents() << " @" << t->head << ' ' << static_cast<char>(t->dir);
  }
  return os.str();
}

std::string Diagnostic::format(const std::string& file) const {
  std::string out;
  if (!file.empty()) out += file + ":";
  if (loc.line) out += loc.str() + ": ";
  else if (!file.empty()) out += " ";
  out += severity == Severity::Error ? "error: " : "warning: ";
  out += message;
  return out;
}

bool has_errors(const Diagnostics& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

}  // namespace mxc
