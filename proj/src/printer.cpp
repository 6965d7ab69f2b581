#include "stratkit/printer.hpp"

namespace stratkit {

std::vector<std::string> mixfix_pieces(const std::string& name) {
  std::vector<std::string> out{""};
  for (char c : name) {
    if (c == '_')
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

namespace {

bool is_open(const OpDecl& op) {
  return op.is_mixfix() && (op.name.front() == '_' || op.name.back() == '_');
}

std::string print(const Term& t);

std::string print_arg(const Term& arg, const OpDecl& parent, bool rightmost) {
  std::string s = print(arg);
  if (arg.is_var() || !is_open(arg.op())) return s;
  const int p = arg.op().prec;
  bool paren = p > parent.prec;
  if (p == parent.prec) paren = rightmost || parent.comm || !same_op(arg.op(), parent);
  return paren ? "(" + s + ")" : s;
}

void join(std::string& out, const std::string& tok) {
  if (tok.empty()) return;
  if (tok == ",") {
    out += ",";
    return;
  }
  if (!out.empty()) out += ' ';
  out += tok;
}

std::string print(const Term& t) {
  if (t.is_var()) return t.name();
  const OpDecl& op = t.op();
  if (t.arity() == 0) return op.name;
  if (!op.is_mixfix()) {
    std::string s = op.name + "(";
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) s += ", ";
      s += print(t.args()[i]);
    }
    return s + ")";
  }
  auto pieces = mixfix_pieces(op.name);
  std::string out;
  if (op.is_ac() && t.arity() > 2) {
    const std::string& sep = pieces[1];
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) join(out, sep);
      join(out, print_arg(t.args()[i], op, true));
    }
    return out;
  }
  const bool open = is_open(op);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    join(out, pieces[i]);
    const Term& a = t.args()[i];
    join(out, open ? print_arg(a, op, i + 1 == t.arity()) : print(a));
  }
  join(out, pieces.back());
  return out;
}

}  // namespace

std::string to_string(const Term& t) { return print(t); }

}  // namespace stratkit
