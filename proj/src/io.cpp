// SPDX-License-Identifier: MIT

#include "cistruct/io.hpp"

#include <cctype>
#include <sstream>

namespace cistruct {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

namespace {

// Strips comments and returns the non-empty payload lines.
std::vector<std::string> payload_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream iss(text);
  std::string line;
  while (std::getline(iss, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

GroundPtr parse_ground_header(const std::string& line) {
  std::vector<std::string> toks = split_ws(line);
  if (toks.empty() || toks[0] != "ground:")
    throw ParseError("expected a 'ground:' header line");
  toks.erase(toks.begin());
  if (toks.empty()) throw ParseError("the ground set must not be empty");
  return GroundSet::make(std::move(toks));
}

int label_index(const GroundSet& g, const std::string& label) {
  int v = g.index_of(label);
  if (v < 0) throw ParseError("unknown variable '" + label + "'");
  return v;
}

// Parses "a b | c d" relative to g.  The bar is required.
Statement parse_statement(const GroundSet& g, const std::string& text) {
  size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw ParseError("statement '" + text + "' is missing the '|' separator");
  if (text.find('|', bar + 1) != std::string::npos)
    throw ParseError("statement '" + text + "' has more than one '|'");
  std::vector<std::string> pair = split_ws(text.substr(0, bar));
  std::vector<std::string> cond = split_ws(text.substr(bar + 1));
  if (pair.size() != 2)
    throw ParseError("statement '" + text +
                     "' must name exactly two variables before '|'");
  int i = label_index(g, pair[0]);
  int j = label_index(g, pair[1]);
  if (i == j)
    throw ParseError("statement '" + text + "' repeats a variable");
  uint16_t mask = 0;
  for (const std::string& c : cond) {
    int v = label_index(g, c);
    uint16_t bit = uint16_t(1) << v;
    if ((mask & bit) || v == i || v == j)
      throw ParseError("statement '" + text + "' repeats a variable");
    mask |= bit;
  }
  if (i > j) std::swap(i, j);
  return Statement{uint8_t(i), uint8_t(j), mask};
}

}  // namespace

Model parse_model(const std::string& text) {
  std::vector<std::string> lines = payload_lines(text);
  if (lines.empty()) throw ParseError("empty model file");
  GroundPtr g = parse_ground_header(lines[0]);
  Model m(g);
  for (size_t k = 1; k < lines.size(); ++k) {
    Statement s = parse_statement(*g, lines[k]);
    if (m.contains(s))
      throw ParseError("duplicate statement '" + lines[k] + "'");
    m.insert(s);
  }
  return m;
}

std::string format_model(const Model& m) {
  const GroundSet& g = *m.ground();
  std::ostringstream out;
  out << "ground:";
  for (int v = 0; v < g.size(); ++v) out << ' ' << g.label(v);
  out << '\n';
  m.bits().for_each_set(
      [&](int k) { out << g.statement_text(g.statement_at(k)) << '\n'; });
  return out.str();
}

ImplicationFile parse_implications(const std::string& text) {
  std::vector<std::string> lines = payload_lines(text);
  if (lines.empty()) throw ParseError("empty implication file");
  ImplicationFile file;
  file.ground = parse_ground_header(lines[0]);
  const GroundSet& g = *file.ground;
  auto parse_side = [&](const std::string& side) {
    Bitset bits(g.sta_size());
    std::string chunk;
    std::istringstream iss(side);
    while (std::getline(iss, chunk, ';')) {
      chunk = trim(chunk);
      if (chunk.empty()) continue;
      bits.set(g.statement_index(parse_statement(g, chunk)));
    }
    return bits;
  };
  for (size_t k = 1; k < lines.size(); ++k) {
    size_t arrow = lines[k].find("=>");
    if (arrow == std::string::npos)
      throw ParseError("implication '" + lines[k] + "' is missing '=>'");
    file.implications.push_back(
        Implication{parse_side(lines[k].substr(0, arrow)),
                    parse_side(lines[k].substr(arrow + 2))});
  }
  return file;
}

std::string format_implications(const GroundSet& g,
                                const std::vector<Implication>& impls) {
  std::ostringstream out;
  out << "ground:";
  for (int v = 0; v < g.size(); ++v) out << ' ' << g.label(v);
  out << '\n';
  auto write_side = [&](const Bitset& bits) {
    bool first = true;
    bits.for_each_set([&](int k) {
      if (!first) out << " ; ";
      first = false;
      out << g.statement_text(g.statement_at(k));
    });
  };
  for (const Implication& imp : impls) {
    write_side(imp.antecedent);
    out << " => ";
    write_side(imp.consequent);
    out << '\n';
  }
  return out.str();
}

SetFunctionFile parse_set_function(const std::string& text) {
  std::vector<std::string> lines = payload_lines(text);
  if (lines.empty()) throw ParseError("empty set-function file");
  SetFunctionFile file;
  file.ground = parse_ground_header(lines[0]);
  const GroundSet& g = *file.ground;
  file.values.assign(size_t(1) << g.size(), mpq_class(0));
  std::vector<bool> seen(file.values.size(), false);
  for (size_t k = 1; k < lines.size(); ++k) {
    std::vector<std::string> toks = split_ws(lines[k]);
    if (toks.size() < 3 || toks[0] != "set" ||
        toks[toks.size() - 2] != "value")
      throw ParseError("expected 'set <vars> value <q>': '" + lines[k] + "'");
    uint16_t mask = 0;
    for (size_t t = 1; t + 2 < toks.size(); ++t) {
      if (toks[t] == "-") {
        if (toks.size() != 4)
          throw ParseError("'-' must stand alone: '" + lines[k] + "'");
        continue;
      }
      uint16_t bit = uint16_t(1) << label_index(g, toks[t]);
      if (mask & bit)
        throw ParseError("repeated variable in '" + lines[k] + "'");
      mask |= bit;
    }
    mpq_class q;
    if (q.set_str(toks.back(), 10) != 0 || q.get_den() == 0)
      throw ParseError("bad rational '" + toks.back() + "'");
    q.canonicalize();
    if (seen[mask]) throw ParseError("set listed twice: '" + lines[k] + "'");
    seen[mask] = true;
    file.values[mask] = q;
  }
  return file;
}

std::string format_set_function(const GroundSet& g,
                                const std::vector<mpq_class>& values) {
  if (values.size() != size_t(1) << g.size())
    throw InvalidArgument("set function has the wrong number of values");
  std::ostringstream out;
  out << "ground:";
  for (int v = 0; v < g.size(); ++v) out << ' ' << g.label(v);
  out << '\n';
  for (uint16_t mask : subsets_by_size(g.size(), 0, g.size())) {
    out << "set";
    if (mask == 0) out << " -";
    for (int v = 0; v < g.size(); ++v)
      if (mask & (1u << v)) out << ' ' << g.label(v);
    out << " value " << values[mask].get_str() << '\n';
  }
  return out.str();
}

std::string write_dimacs(const ClauseSet& cs, const GroundSet* names) {
  std::ostringstream out;
  if (names) {
    for (int k = 0; k < names->sta_size(); ++k)
      out << "c var " << (k + 1) << " = "
          << names->statement_text(names->statement_at(k)) << '\n';
  }
  out << "p cnf " << cs.num_vars << ' ' << cs.clauses.size() << '\n';
  for (const std::vector<int>& clause : cs.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string format_model_line(const Bitset& bits) {
  if (bits.none()) return "-";
  std::ostringstream out;
  out << std::hex;
  bool first = true;
  bits.for_each_set([&](int k) {
    if (!first) out << ' ';
    first = false;
    out << k;
  });
  return out.str();
}

Bitset parse_model_line(const std::string& line, int universe) {
  Bitset bits(universe);
  std::string body = trim(line);
  if (body == "-") return bits;
  for (const std::string& tok : split_ws(body)) {
    size_t pos = 0;
    int k = -1;
    try {
      k = std::stoi(tok, &pos, 16);
    } catch (...) {
      throw ParseError("bad statement index '" + tok + "'");
    }
    if (pos != tok.size() || k < 0 || k >= universe || bits.test(k))
      throw ParseError("bad statement index '" + tok + "'");
    bits.set(k);
  }
  return bits;
}

}  // namespace cistruct
